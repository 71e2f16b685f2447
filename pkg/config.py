"""
Scenario configuration. Values come from an INI-style file (see
data/default.cfg) and are validated here; every default is the reference
market: 150 episodes of 2000 s with 25 buyers, O = 10, pr_index = 0.4.
"""
import math
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from data import read_config_file
from errors import ConfigError
from strategies import StrategyKind


class Uniform(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    low: float = Field(ge=0)
    high: float = Field(ge=0)

    @model_validator(mode="after")
    def _ordered(self):
        if self.low > self.high:
            raise ValueError(f"low ({self.low}) must not exceed high ({self.high})")
        return self


class WeightsDistribution(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: Literal["simplex", "equal"] = "simplex"


class ScenarioConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    n_vendors: int = Field(12, ge=1)
    episodes: int = Field(150, ge=1)
    episode_length: float = Field(2000.0, gt=0)
    buyers_per_episode: int = Field(25, ge=1)
    O: int = Field(10, ge=1)
    W: Optional[int] = Field(None, ge=1)
    pr_index: float = Field(0.4, ge=0, le=1)
    alpha: float = Field(0.5, ge=0)
    seed: int = Field(0, ge=0)
    strategy: StrategyKind = StrategyKind.MPRA

    capacity: Uniform = Uniform(low=500, high=1000)
    base_price: Uniform = Uniform(low=1, high=5)
    markup: Uniform = Uniform(low=1.0, high=1.5)
    bundle: Uniform = Uniform(low=10, high=100)
    duration: Uniform = Uniform(low=50, high=200)
    max_wait: Uniform = Uniform(low=100, high=400)
    weights: WeightsDistribution = WeightsDistribution()

    @field_validator("strategy", mode="before")
    @classmethod
    def _strategy(cls, value):
        return value if isinstance(value, StrategyKind) else StrategyKind.parse(value)

    @field_validator("markup", "duration", "base_price")
    @classmethod
    def _positive(cls, dist):
        if dist.low <= 0:
            raise ValueError(f"low must be > 0, got {dist.low}")
        return dist

    @field_validator("capacity", "bundle")
    @classmethod
    def _whole_units(cls, dist):
        # Se sortean unidades enteras dentro de [low, high]
        if dist.low < 1:
            raise ValueError(f"low must be >= 1, got {dist.low}")
        if math.ceil(dist.low) > math.floor(dist.high):
            raise ValueError(f"[{dist.low}, {dist.high}] holds no whole quantity")
        return dist

    @property
    def window_w(self):
        return self.W if self.W is not None else self.O

    def cell_name(self):
        return f"{self.strategy.value}_v{self.n_vendors}_s{self.seed}"


def _field_path(error):
    return ".".join(str(part) for part in error["loc"]) or "config"


def build_config(values: dict, overrides: Optional[dict] = None) -> ScenarioConfig:
    values = {**values, **{k: v for k, v in (overrides or {}).items() if v is not None}}
    try:
        return ScenarioConfig(**values)
    except ValidationError as e:
        first = e.errors()[0]
        raise ConfigError(_field_path(first), first["msg"]) from None


def sections_to_values(sections: dict) -> dict:
    # [scenario] va al nivel superior, el resto son distribuciones
    values = {}
    for name, entries in sections.items():
        entries = {k: v for k, v in entries.items() if v != ""}
        if name == "scenario":
            values.update(entries)
        else:
            values[name] = entries
    return values


def load_config(path=None, overrides: Optional[dict] = None) -> ScenarioConfig:
    if path is None:
        return build_config({}, overrides)
    return build_config(sections_to_values(read_config_file(path)), overrides)
