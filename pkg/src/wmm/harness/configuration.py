from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from wmm.litmus import LITMUS_SUFFIX

from ._exceptions import ConfigurationError

__all__ = ["ALL_MODELS", "ENGINES", "EXPECTATION_MODELS", "FORMATS", "RunConfig"]

AXIOMATIC = "axiomatic"
OPERATIONAL = "operational"
BOTH = "both"
ENGINES = (AXIOMATIC, OPERATIONAL, BOTH)
FORMATS = ("table", "json", "dot", "trace")

# Models an expect block may name; also the set run by --all-models.
EXPECTATION_MODELS = ("SC", "TSO", "ARM", "RISCV")
ALL_MODELS = EXPECTATION_MODELS


@dataclass
class RunConfig:
    """What `wmm run` should check, and how to report it.

    Args:
        tests: Litmus files, or directories whose `.litmus` files are all run.
        models: Model names (SC, TSO, ARM, ARMISH, RISCV, PIPELINE) or model file paths.
        engine: `axiomatic`, `operational` or `both`.
        output_format: `table`, `json`, `dot` or `trace`.
        check_expect: Compare every verdict with the expect block of its test.
        expect: Expected answer (`yes` or `no`) for every verdict, overriding expect blocks.
        all_models: Also run SC, TSO, ARM and RISCV.
        out: Write the report to this file instead of standard output.
        strong_release_acquire: Under PIPELINE, acquire loads also wait for earlier release stores.
    """

    tests: list[str]
    models: list[str] = field(default_factory=list)
    engine: str = AXIOMATIC
    output_format: str = "table"
    check_expect: bool = False
    expect: str | None = None
    all_models: bool = False
    out: str | None = None
    strong_release_acquire: bool = False

    def __post_init__(self: RunConfig) -> None:  # noqa: D105
        if not self.tests:
            msg = "RunConfig: at least one test path is required"
            raise ConfigurationError(msg)
        if not self.models and not self.all_models:
            msg = "RunConfig: at least one model is required (use --model or --all-models)"
            raise ConfigurationError(msg)
        if self.engine not in ENGINES:
            msg = f"RunConfig: engine must be one of {ENGINES}, got '{self.engine}'"
            raise ConfigurationError(msg)
        if self.output_format not in FORMATS:
            msg = f"RunConfig: output format must be one of {FORMATS}, got '{self.output_format}'"
            raise ConfigurationError(msg)
        if self.output_format == "dot" and self.engine == OPERATIONAL:
            msg = "RunConfig: the dot format needs the axiomatic engine"
            raise ConfigurationError(msg)
        if self.output_format == "trace" and self.engine == AXIOMATIC:
            msg = "RunConfig: the trace format needs the operational engine"
            raise ConfigurationError(msg)
        if self.expect not in (None, "yes", "no"):
            msg = f"RunConfig: expect must be 'yes' or 'no', got '{self.expect}'"
            raise ConfigurationError(msg)

    @property
    def model_names(self: RunConfig) -> list[str]:
        """Requested models without duplicates, --all-models first."""
        names = list(ALL_MODELS) if self.all_models else []
        for name in self.models:
            if name.upper() not in {n.upper() for n in names}:
                names.append(name)
        return names

    @property
    def engines(self: RunConfig) -> tuple[str, ...]:
        return (AXIOMATIC, OPERATIONAL) if self.engine == BOTH else (self.engine,)

    def test_paths(self: RunConfig) -> list[Path]:
        """Every litmus file to run, in the given order; directories expand to their sorted contents.

        Raises:
            ConfigurationError: If a path does not exist.
        """
        paths: list[Path] = []
        for name in self.tests:
            path = Path(name)
            if path.is_dir():
                paths += sorted(path.glob(f"*{LITMUS_SUFFIX}"))
            elif path.is_file():
                paths.append(path)
            else:
                msg = f"RunConfig: '{name}' is neither a litmus file nor a directory"
                raise ConfigurationError(msg)
        return paths

    def save(self: RunConfig, path: Path) -> str:
        """Save the configuration as JSON.

        Args:
            path: The path to save the configuration to.

        Returns:
            str: Final path component of the saved file, without the extension.
        """
        with path.open("w") as f:
            json.dump(asdict(self), f, indent=4, sort_keys=True)
        return path.stem

    @classmethod
    def from_dict(cls: type[RunConfig], d: dict) -> RunConfig:
        """Create a RunConfig from a dict.

        Args:
            d: A configuration in dict form.

        Raises:
            ConfigurationError: If the dict has unknown keys or misses the tests.

        Returns:
            RunConfig: The configuration.
        """
        unknown = sorted(set(d) - set(cls.__dataclass_fields__))
        if unknown:
            msg = f"RunConfig: unknown keys {unknown}"
            raise ConfigurationError(msg)
        if "tests" not in d:
            msg = "RunConfig: 'tests' is required"
            raise ConfigurationError(msg)
        return cls(**d)

    @classmethod
    def load(cls: type[RunConfig], file_path: Path) -> RunConfig:
        """Load a RunConfig from a JSON file.

        Args:
            file_path: The path to the file to load.

        Returns:
            RunConfig: The configuration.
        """
        with file_path.open() as f:
            configuration_dict = json.load(f)
        return cls.from_dict(configuration_dict)
