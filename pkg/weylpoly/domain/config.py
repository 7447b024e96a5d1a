import os
import sys
from contextlib import contextmanager
from enum import Enum
from pathlib import Path
from typing import Iterator, Optional, TextIO, Tuple

from yaml import dump, safe_load

from weylpoly.domain.exceptions import ConfigurationError

DEFAULT_MAX_RANK = 7
MAX_RANK_ENV = "WEYLPOLY_MAX_RANK"
UNCAPPED = sys.maxsize
# Algebra of the braid sweep when none is given.
DEFAULT_BRAID_RANK = 3

_cap_override: Optional[int] = None

class BaseMode(str, Enum):
    """Base class for mode enums with common string conversion functionality."""

    @classmethod
    def from_str(cls, value: str) -> "BaseMode":
        """Create mode from string."""
        try:
            return cls(value)
        except ValueError:
            raise ValueError(f"Invalid {cls.__name__.lower()}: {value}. Must be one of: {' '.join(m.value for m in cls)}")

    def __str__(self) -> str:
        return self.value

class Family(BaseMode):
    """Supported simple Lie algebra families."""
    A = "A"
    C2 = "C2"
    G2 = "G2"

class SumMethod(BaseMode):
    """Ways of computing a Weyl polytope sum."""
    DOMINANCE = "dominance"  # weight system by dominance order
    CONES = "cones"          # signed simplicial cone counts
    DEMAZURE = "demazure"    # generalized Demazure operator product

class CharMethod(BaseMode):
    """Ways of computing a character."""
    DEMAZURE = "demazure"
    WEYL = "weyl"

class OutputFormat(BaseMode):
    """Report formats."""
    TEXT = "text"
    JSON = "json"

class Sweep(BaseMode):
    """Verification sweeps."""
    THEOREM = "theorem"
    LEMMA = "lemma"
    RANK2 = "rank2"
    BRAID = "braid"
    CHARACTER = "character"
    CONES = "cones"
    EXPANSION = "expansion"

def _env_max_rank() -> Optional[int]:
    raw = os.environ.get(MAX_RANK_ENV)
    if raw is None or raw.strip() == "":
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ConfigurationError(f"{MAX_RANK_ENV} must be a positive integer, got {raw!r}")
    if value < 1:
        raise ConfigurationError(f"{MAX_RANK_ENV} must be a positive integer, got {raw!r}")
    return value

def default_rank_cap() -> int:
    """The value of WEYLPOLY_MAX_RANK when set, else DEFAULT_MAX_RANK."""
    value = _env_max_rank()
    return DEFAULT_MAX_RANK if value is None else value

def group_rank_cap() -> int:
    """Rank cap for full Weyl group enumeration.

    Returns:
        The cap of the innermost enumeration_cap block, else default_rank_cap()
    """
    if _cap_override is not None:
        return _cap_override
    return default_rank_cap()

@contextmanager
def enumeration_cap(cap: int) -> Iterator[int]:
    """Use cap as the group rank cap inside the block (UNCAPPED lifts it)."""
    global _cap_override
    if cap < 1:
        raise ConfigurationError(f"The rank cap must be a positive integer, got {cap}")
    previous = _cap_override
    _cap_override = cap
    try:
        yield cap
    finally:
        _cap_override = previous

class Config:
    """Persistent defaults for weylpoly runs.

    Attrs:
      max_rank: rank cap for full Weyl group enumeration
      max_level: default level bound of verification sweeps
      theorem_rank: default top rank of the A-family sweeps
      seed: seed of the randomized property suites
      format: default output format (text or json)
    """

    @staticmethod
    def get_config_dir() -> str:
        """Get the user configuration directory (~/.weylpoly)."""
        return str(Path.home() / ".weylpoly")

    def __init__(
        self,
        max_rank: int = DEFAULT_MAX_RANK,
        max_level: int = 4,
        theorem_rank: int = 4,
        seed: int = 0,
        format: str = OutputFormat.TEXT.value
    ):
        """Initialize configuration.

        Raises:
            ConfigurationError: If a value is out of range
        """
        try:
            self.max_rank = int(max_rank)
            self.max_level = int(max_level)
            self.theorem_rank = int(theorem_rank)
            self.seed = int(seed)
        except (TypeError, ValueError) as e:
            raise ConfigurationError(f"Invalid configuration value: {e}")
        try:
            self.format = OutputFormat.from_str(str(format))
        except ValueError as e:
            raise ConfigurationError(str(e))

        if self.max_rank < 1:
            raise ConfigurationError("max_rank must be a positive integer")
        if self.max_level < 0:
            raise ConfigurationError("max_level must be a nonnegative integer")
        if self.theorem_rank < 1:
            raise ConfigurationError("theorem_rank must be a positive integer")

    def to_yaml(self, fh: TextIO) -> None:
        """Serialize configuration to YAML."""
        dump(
            {
                k: str(v) if isinstance(v, BaseMode) else v
                for k, v in self.__dict__.items()
            }, fh, sort_keys=True)

    @classmethod
    def from_yaml(cls, fh: TextIO) -> "Config":
        """Create Config from YAML."""
        data = safe_load(fh) or {}
        if not isinstance(data, dict):
            raise ConfigurationError("Configuration file must contain a mapping")
        unknown = set(data) - {"max_rank", "max_level", "theorem_rank", "seed", "format"}
        if unknown:
            raise ConfigurationError(f"Unknown configuration keys: {' '.join(sorted(unknown))}")
        return cls(**data)

    def save(self) -> None:
        """Save configuration to the user configuration file."""
        Path(self.get_config_dir()).mkdir(parents=True, exist_ok=True)
        with open(self.config_path, "w") as fh:
            self.to_yaml(fh)

    @classmethod
    def load(cls) -> Optional["Config"]:
        """Load the user configuration file, or None when there is none."""
        conf_path = Path(cls.get_config_dir()) / "config.yaml"
        if conf_path.exists():
            with open(conf_path, "r") as fh:
                return cls.from_yaml(fh)
        return None

    @classmethod
    def resolve(cls) -> "Config":
        """Stored configuration (or defaults) with the environment override applied."""
        config = cls.load() or cls()
        env_rank = _env_max_rank()
        if env_rank is not None:
            config.max_rank = env_rank
        return config

    def __eq__(self, value: object) -> bool:
        if not isinstance(value, Config):
            return False
        return self.__dict__ == value.__dict__

    @property
    def config_path(self) -> str:
        """Get config path"""
        return str(Path(self.get_config_dir()) / "config.yaml")

class RunConfig:
    """Validated parameters of one CLI invocation.

    Attrs:
      algebra: the AlgebraId the command runs on (None when a sweep picks its own)
      weight: Dynkin labels (None when not applicable)
      method: selected computation method, if any
      max_level: level bound of sweeps
      max_rank: rank bound of sweeps
      format: output format
      seed: seed of randomized suites
      rank_cap: largest rank a sweep may reach without allow_large
      allow_large: lift the rank cap (the --force group flag)
      sweep: the sweep to run, if any; it decides which rank the cap is checked against
    """

    def __init__(
        self,
        algebra=None,
        weight: Optional[Tuple[int, ...]] = None,
        method: Optional[BaseMode] = None,
        max_level: int = 4,
        max_rank: int = 4,
        format: str = OutputFormat.TEXT.value,
        seed: int = 0,
        rank_cap: int = DEFAULT_MAX_RANK,
        allow_large: bool = False,
        sweep: Optional[Sweep] = None
    ):
        """Initialize run configuration.

        Raises:
            ConfigurationError: If the configuration is invalid
        """
        if max_level < 0:
            raise ConfigurationError("max_level must be a nonnegative integer")
        if max_rank < 1:
            raise ConfigurationError("max_rank must be a positive integer")
        if rank_cap < 1:
            raise ConfigurationError("rank_cap must be a positive integer")
        self.algebra = algebra
        self.weight = weight
        self.method = method
        self.max_level = max_level
        self.max_rank = max_rank
        self.format = OutputFormat.from_str(str(format))
        self.seed = seed
        self.rank_cap = rank_cap
        self.allow_large = allow_large
        self.sweep = sweep
        top = self.top_rank
        if top > rank_cap and not allow_large:
            raise ConfigurationError(
                f"rank {top} exceeds the enumeration cap {rank_cap}; "
                f"raise {MAX_RANK_ENV} or pass --force"
            )

    @property
    def top_rank(self) -> int:
        """Largest rank the run reaches."""
        if self.sweep == Sweep.RANK2:
            return 2
        if self.algebra is not None:
            return self.algebra.rank
        if self.sweep == Sweep.BRAID:
            return DEFAULT_BRAID_RANK
        return self.max_rank

    @property
    def group_cap(self) -> int:
        """The rank cap to enumerate Weyl groups under."""
        return UNCAPPED if self.allow_large else self.rank_cap
