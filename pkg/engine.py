"""
Discrete-event market engine.

Buyers arrive during each episode and are auctioned among the vendors that
can serve them. A buyer nobody can serve waits in a FIFO buffer until its
deadline; every service completion frees capacity and retries the oldest
waiting buyer. One run is single-threaded and fully determined by the seed.
"""
import heapq
import logging
import math
from collections import deque
from dataclasses import dataclass, field
from enum import Enum

from errors import CapacityExceededError, OutOfOrderError
from history import AuctionRecord, BidSnapshot, HistoryStore
from market import BuyerRequest, PreferenceWeights, ResourceBundle, VendorProfile, release, reserve
from metrics import ScenarioStats
from strategies import allocate, solicit_bids
from utils import episode_streams, make_rng, sample_uniform, sample_units, sample_weights

logger = logging.getLogger(__name__)


class EventKind(Enum):
    BUYER_ARRIVAL = "arrival"
    SERVICE_COMPLETE = "complete"
    BUYER_TIMEOUT = "timeout"


@dataclass(order=True, frozen=True)
class SimEvent:
    timestamp: float
    tiebreak_seq: int
    kind: EventKind = field(compare=False)
    request: BuyerRequest = field(default=None, compare=False)
    vendor_id: str = field(default=None, compare=False)
    bundle: ResourceBundle = field(default=None, compare=False)


class WaitBuffer:
    """FIFO of buyers waiting for capacity; an entry expires at arrival + max_wait."""

    def __init__(self):
        self._queue = deque()
        self._pending = set()

    def __len__(self):
        return len(self._pending)

    def __contains__(self, request_id):
        return request_id in self._pending

    def push(self, request: BuyerRequest):
        self._queue.append(request)
        self._pending.add(request.request_id)

    def push_front(self, request: BuyerRequest):
        self._queue.appendleft(request)
        self._pending.add(request.request_id)

    def remove(self, request_id):
        self._pending.discard(request_id)

    def pop(self, now):
        """Oldest pending request not yet expired; expired and removed entries are dropped."""
        while self._queue:
            request = self._queue.popleft()
            if request.request_id not in self._pending:
                continue
            if request.expiry < now:
                self._pending.discard(request.request_id)
                continue
            self._pending.discard(request.request_id)
            return request
        return None

    def drain(self):
        pending = [r for r in self._queue if r.request_id in self._pending]
        self._queue.clear()
        self._pending.clear()
        return pending


@dataclass
class WorldState:
    vendors: dict
    events: list = field(default_factory=list)
    clock: float = 0.0
    next_event_seq: int = 0
    next_auction_seq: int = 0

    def schedule(self, timestamp, kind, **payload):
        heapq.heappush(self.events, SimEvent(timestamp, self.next_event_seq, kind, **payload))
        self.next_event_seq += 1

    def check_capacity(self):
        for vendor in self.vendors.values():
            if not vendor.allocated.fits_within(vendor.capacity):
                raise CapacityExceededError(f"{vendor.vendor_id} allocated {vendor.allocated} over {vendor.capacity}")


@dataclass
class EpisodeStats:
    episode: int
    arrivals: int = 0
    auctions_held: int = 0
    allocated: int = 0
    rejects: int = 0
    fallbacks: int = 0
    payments: dict = field(default_factory=dict)  # vendor_id -> list of payments


def vendor_ids(n):
    width = max(2, len(str(n)))
    return [f"v{i:0{width}d}" for i in range(1, n + 1)]


def build_world(config) -> WorldState:
    # Capacidades y precios base se sortean una vez por escenario
    rng = make_rng(config.seed, "vendors")
    markups = make_rng(config.seed, "markups")
    vendors = {}
    for vendor_id in vendor_ids(config.n_vendors):
        capacity = ResourceBundle.from_values(sample_units(rng, config.capacity, 4))
        base_price = ResourceBundle.from_values(sample_uniform(rng, config.base_price, 4))
        markup = float(sample_uniform(markups, config.markup))
        vendors[vendor_id] = VendorProfile(vendor_id, capacity, base_price, markup)
    return WorldState(vendors)


def generate_arrivals(config, episode_index, rng=None):
    streams = rng if rng is not None else episode_streams(config.seed, episode_index)
    start = episode_index * config.episode_length
    n = config.buyers_per_episode
    times = sorted(float(t) for t in streams["arrivals"].uniform(start, start + config.episode_length, n))
    requests = []
    for i, t in enumerate(times):
        # uniform() puede devolver el extremo superior por redondeo
        t = min(t, math.nextafter(start + config.episode_length, start))
        rb = ResourceBundle.from_values(sample_units(streams["bundles"], config.bundle, 4))
        duration = float(sample_uniform(streams["durations"], config.duration))
        max_wait = float(sample_uniform(streams["waits"], config.max_wait))
        weights = PreferenceWeights(*sample_weights(streams["weights"], config.weights.kind))
        requests.append(BuyerRequest(f"e{episode_index}-b{i}", rb, t + max_wait, duration, weights, t, max_wait))
    return requests


def _try_allocate(config, world, history, stats, request, now, episode_index):
    vendors = list(world.vendors.values())
    bids = solicit_bids(request, vendors, config.strategy, history, config.alpha, config.window_w)
    seq = world.next_auction_seq
    world.next_auction_seq += 1
    solicited = tuple(world.vendors)
    if not bids:
        history.record_auction(AuctionRecord(seq, request.request_id, (), solicited,
                                             episode=episode_index, time=now))
        return False

    result = allocate(request, bids, config.strategy, history, config.pr_index, config.O)
    winner = result.winner
    world.vendors[winner] = reserve(world.vendors[winner], request.rb)
    world.schedule(now + request.duration, EventKind.SERVICE_COMPLETE, request=request,
                   vendor_id=winner, bundle=request.rb)

    snapshots = {b.vendor_id: BidSnapshot(b.sp, result.diagnostics[b.vendor_id].pr,
                                          result.diagnostics[b.vendor_id].q) for b in bids}
    record = AuctionRecord(seq, request.request_id, tuple(b.vendor_id for b in bids), solicited,
                           winner, result.cost, snapshots, result.fallback, episode_index, now)
    history.record_auction(record)

    stats.auctions_held += 1
    stats.allocated += 1
    stats.fallbacks += int(result.fallback)
    stats.payments.setdefault(winner, []).append(result.cost)
    logger.debug("t=%.2f auction %d %s -> %s pays %.4f%s", now, seq, request.request_id, winner,
                 result.cost, " (fallback)" if result.fallback else "")
    return True


def run_episode(config, episode_index, world_state: WorldState, history: HistoryStore, arrivals=None) -> EpisodeStats:
    if arrivals is None:
        arrivals = generate_arrivals(config, episode_index)
    world = world_state
    stats = EpisodeStats(episode_index, arrivals=len(arrivals))
    buffer = WaitBuffer()
    end = (episode_index + 1) * config.episode_length
    for request in arrivals:
        world.schedule(request.arrival_time, EventKind.BUYER_ARRIVAL, request=request)

    while world.events and world.events[0].timestamp < end:
        event = heapq.heappop(world.events)
        if event.timestamp < world.clock:
            raise OutOfOrderError(f"clock went back from {world.clock} to {event.timestamp}")
        world.clock = event.timestamp

        if event.kind is EventKind.BUYER_ARRIVAL:
            request = event.request
            if not _try_allocate(config, world, history, stats, request, world.clock, episode_index):
                # Nadie puede atenderlo -> esperar hasta su plazo
                buffer.push(request)
                world.schedule(request.expiry, EventKind.BUYER_TIMEOUT, request=request)
                logger.debug("t=%.2f %s buffered until %.2f", world.clock, request.request_id, request.expiry)

        elif event.kind is EventKind.SERVICE_COMPLETE:
            world.vendors[event.vendor_id] = release(world.vendors[event.vendor_id], event.bundle)
            waiting = buffer.pop(world.clock)
            if waiting is not None and not _try_allocate(config, world, history, stats, waiting,
                                                         world.clock, episode_index):
                buffer.push_front(waiting)
                logger.debug("t=%.2f %s still waiting", world.clock, waiting.request_id)

        elif event.kind is EventKind.BUYER_TIMEOUT:
            if event.request.request_id in buffer:
                buffer.remove(event.request.request_id)
                stats.rejects += 1
                logger.debug("t=%.2f %s timed out", world.clock, event.request.request_id)
        world.check_capacity()

    # Los compradores en espera no pasan al siguiente episodio
    leftover = buffer.drain()
    stats.rejects += len(leftover)
    world.events = [e for e in world.events if e.kind is EventKind.SERVICE_COMPLETE]
    heapq.heapify(world.events)
    world.clock = max(world.clock, end)
    return stats


def drain_services(world: WorldState):
    """Complete every service still running, leaving all vendors idle."""
    while world.events:
        event = heapq.heappop(world.events)
        if event.kind is EventKind.SERVICE_COMPLETE:
            world.vendors[event.vendor_id] = release(world.vendors[event.vendor_id], event.bundle)
        world.clock = max(world.clock, event.timestamp)


def run_scenario(config, history=None) -> ScenarioStats:
    world = build_world(config)
    history = history if history is not None else HistoryStore()
    stats = ScenarioStats(config.strategy.value, config.n_vendors, config.seed)
    payments = {vendor_id: [] for vendor_id in world.vendors}
    for episode_index in range(config.episodes):
        episode = run_episode(config, episode_index, world, history)
        stats.episodes += 1
        stats.arrivals += episode.arrivals
        stats.auctions_held += episode.auctions_held
        stats.allocated += episode.allocated
        stats.rejects += episode.rejects
        stats.fallbacks += episode.fallbacks
        for vendor_id, paid in episode.payments.items():
            payments[vendor_id].extend(paid)
    drain_services(world)

    stats.payments = payments
    stats.wins = history.win_counts(world.vendors)
    stats.auctions = [r for r in history.records if r.winner is not None]
    return stats
