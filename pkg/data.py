import configparser
from pathlib import Path

from errors import ConfigError

CSV_FLOAT_FORMAT = "%.6g"


def read_config_file(path):
    # Lee el archivo de configuración y devuelve sus secciones
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",), interpolation=None)
    parser.optionxform = str
    try:
        with open(path, encoding="utf-8") as file:
            parser.read_file(file)
    except (OSError, configparser.Error) as e:
        raise ConfigError("config", f"cannot read {path}: {e}") from None
    return {section: dict(parser.items(section)) for section in parser.sections()}


def update_data(data, path):
    # Guardar tabla como CSV
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    data.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n", encoding="utf-8")


def update_text(text, path):
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as file:
        file.write(text)


def update_manifest(out_dir, cells, failed=None):
    """Write MANIFEST listing every completed cell, plus the failing one if any."""
    lines = [f"{cell},done" for cell in cells]
    if failed is not None:
        lines.append(f"{failed},failed")
    update_text("\n".join(lines) + "\n" if lines else "", Path(out_dir) / "MANIFEST")
