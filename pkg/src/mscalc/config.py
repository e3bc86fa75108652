"""Configuration: defaults file, extension context file and batch sweep file."""

import logging
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, List, Optional

try:
    import tomllib
except ImportError:
    import tomli as tomllib

from .errors import ContextError
from .functorial import ExtensionContext, OrbitDatum, OrbitKind

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path.home() / ".config" / "mscalc" / "config.toml"

SECTIONS = ("output", "fiber", "random", "logging")


def read_toml(path: Path) -> dict:
    """Parse a TOML file.

    Raises:
        ContextError: if the file is not valid TOML, naming the file
    """
    with open(path, "rb") as f:
        try:
            return tomllib.load(f)
        except tomllib.TOMLDecodeError as exc:
            raise ContextError(f"{path}: invalid TOML: {exc}") from None


def check_type(value: Any, default: Any, where: str) -> None:
    """Require ``value`` to have the type of ``default``; bools are not ints."""
    expected = type(default)
    if isinstance(value, bool) != (expected is bool) or not isinstance(value, expected):
        raise ContextError(f"{where} must be {expected.__name__}, got {value!r}")


@dataclass
class OutputConfig:
    """Report format."""

    json: bool = False
    json_schema_version: int = 1


@dataclass
class FiberConfig:
    """Fiber enumeration defaults."""

    default_degree: int = 2
    emit_elements: bool = False
    max_assignments: int = 5_000_000


@dataclass
class RandomConfig:
    """Random corpus generation."""

    seed: int = 0
    max_degree: int = 30
    max_segments: int = 6


@dataclass
class LoggingConfig:
    level: str = "WARNING"


@dataclass
class Config:
    """Main configuration container."""

    output: OutputConfig = field(default_factory=OutputConfig)
    fiber: FiberConfig = field(default_factory=FiberConfig)
    random: RandomConfig = field(default_factory=RandomConfig)
    logging: LoggingConfig = field(default_factory=LoggingConfig)

    @classmethod
    def load(cls, config_path: Path | None = None) -> "Config":
        """Load configuration from file or use defaults."""
        config = cls()

        if config_path is None:
            config_path = DEFAULT_CONFIG_PATH

        if config_path.exists():
            data = read_toml(config_path)
            logger.debug("loaded configuration from %s", config_path)

            unknown = set(data) - set(SECTIONS)
            if unknown:
                raise ContextError(f"{config_path}: unknown section(s) {sorted(unknown)}")
            for section_name in SECTIONS:
                section = getattr(config, section_name)
                values = data.get(section_name, {})
                if not isinstance(values, dict):
                    raise ContextError(f"{config_path}: [{section_name}] must be a table")
                for key, value in values.items():
                    if not hasattr(section, key):
                        raise ContextError(f"{config_path}: unknown setting {section_name}.{key}")
                    check_type(value, getattr(section, key), f"{config_path}: {section_name}.{key}")
                    setattr(section, key, value)

        return config


def _read_lines(path: Path):
    """Numbered, stripped lines, skipping blanks and ``#`` comments."""
    with open(path) as f:
        for number, line in enumerate(f, start=1):
            line = line.strip()
            if line and not line.startswith("#"):
                yield number, line


def _key_values(words: List[str], where: str) -> dict:
    values = {}
    for word in words:
        key, sep, value = word.partition("=")
        if not sep or not value:
            raise ContextError(f"{where}: expected key=value, got {word!r}")
        values[key] = value
    return values


def parse_orbit(words: List[str], where: str) -> OrbitDatum:
    """``<name> kind=<I|II> k=<int>`` as an orbit declaration."""
    if not words:
        raise ContextError(f"{where}: orbit needs a name")
    name, options = words[0], _key_values(words[1:], where)
    unknown = set(options) - {"kind", "k"}
    if unknown:
        raise ContextError(f"{where}: unknown orbit option(s) {sorted(unknown)}")
    try:
        kind = OrbitKind(options.get("kind", ""))
    except ValueError:
        raise ContextError(f"{where}: orbit kind must be I or II") from None
    try:
        k = int(options.get("k", "1"))
    except ValueError:
        raise ContextError(f"{where}: k must be an integer") from None
    return OrbitDatum(name, k, kind)


def load_context(path: Path, default_degree: Optional[int] = None) -> ExtensionContext:
    """Read ``degree <prime>`` and ``orbit ...`` lines into an extension context.

    Raises:
        ContextError: on a malformed line, naming the file and line number
    """
    degree = default_degree
    orbits: List[OrbitDatum] = []
    for number, line in _read_lines(path):
        where = f"{path}:{number}"
        keyword, *words = line.split()
        if keyword == "degree":
            if len(words) != 1 or not words[0].lstrip("-").isdigit():
                raise ContextError(f"{where}: expected 'degree <prime>'")
            degree = int(words[0])
        elif keyword == "orbit":
            orbits.append(parse_orbit(words, where))
        else:
            raise ContextError(f"{where}: unknown directive {keyword!r}")

    if degree is None:
        raise ContextError(f"{path}: no 'degree' line and no default degree")
    ctx = ExtensionContext(degree, tuple(orbits))
    logger.info("context d=%d with %d orbit(s) from %s", ctx.d, len(ctx.orbits), path)
    return ctx


@dataclass
class SweepConfig:
    """One ``[[sweep]]`` table of a batch file."""

    degrees: List[int] = field(default_factory=lambda: [2])
    sizes: List[int] = field(default_factory=lambda: [2, 3])
    max_length: int = 2
    max_gap: int = 2
    kind: str = "bc"
    orbit: str = "rho"
    k: int = 1

    def __post_init__(self):
        for item in fields(self):
            value = getattr(self, item.name)
            if item.name in ("degrees", "sizes"):
                if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
                    raise ContextError(f"sweep {item.name} must be a list of integers, got {value!r}")
            else:
                check_type(value, item.default, f"sweep {item.name}")
        if self.kind not in ("bc", "ai"):
            raise ContextError(f"sweep kind must be 'bc' or 'ai', got {self.kind!r}")
        if self.max_length <= 0 or self.max_gap <= 0 or self.k <= 0:
            raise ContextError("max_length, max_gap and k must be positive")
        if any(s <= 0 for s in self.sizes):
            raise ContextError(f"sweep sizes must be positive, got {self.sizes}")


def load_sweeps(path: Path) -> List[SweepConfig]:
    """Read the ``[[sweep]]`` tables of a batch file.

    An optional ``[context]`` table supplies ``orbit`` and ``k`` defaults.
    """
    data = read_toml(path)

    defaults = data.get("context", {})
    if not isinstance(defaults, dict):
        raise ContextError(f"{path}: [context] must be a table")
    unknown = set(defaults) - {"orbit", "k"}
    if unknown:
        raise ContextError(f"{path}: unknown context setting(s) {sorted(unknown)}")

    sweeps = []
    tables = data.get("sweep", [])
    if not isinstance(tables, list) or not all(isinstance(table, dict) for table in tables):
        raise ContextError(f"{path}: sweep must be an array of [[sweep]] tables")
    for index, table in enumerate(tables, start=1):
        try:
            sweeps.append(SweepConfig(**{**defaults, **table}))
        except TypeError as exc:
            raise ContextError(f"{path}: sweep {index}: {exc}") from None
        except ContextError as exc:
            raise ContextError(f"{path}: sweep {index}: {exc.message}") from None
    if not sweeps:
        raise ContextError(f"{path}: no [[sweep]] tables")
    return sweeps
