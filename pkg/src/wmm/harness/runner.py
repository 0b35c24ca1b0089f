from __future__ import annotations

import logging
from dataclasses import dataclass
from multiprocessing import Pool
from typing import TYPE_CHECKING

from wmm.axiomatic import BUILTIN_MODELS, CandidateChecker, load_model
from wmm.helpers.utilities import worker_count
from wmm.litmus import CorpusError, LitmusSyntaxError, LitmusValidationError, load_litmus
from wmm.operational import Explorer, Semantics, SemanticsConfig

from ._exceptions import ConfigurationError, ExpectationError
from .configuration import AXIOMATIC, EXPECTATION_MODELS, OPERATIONAL
from .report import Entry, Report

if TYPE_CHECKING:
    from wmm.axiomatic import ModelSpec
    from wmm.datamodels import Verdict
    from wmm.litmus import LitmusTest

    from .configuration import RunConfig

__all__ = ["ModelTarget", "Runner", "resolve_model", "run"]

_SEMANTICS = {
    "SC": Semantics.SC,
    "TSO": Semantics.TSO,
    "ARM": Semantics.PIPELINE,
    "ARMISH": Semantics.PIPELINE,
    "RISCV": Semantics.PIPELINE,
    "PIPELINE": Semantics.PIPELINE,
}


@dataclass(frozen=True)
class ModelTarget:
    """A requested model, resolved for both engines.

    Args:
        name: The name as requested.
        model: The axiomatic model.
        semantics: The matching operational semantics, None for user model files.
    """

    name: str
    model: ModelSpec
    semantics: Semantics | None


def resolve_model(name: str) -> ModelTarget:
    """Resolve a model name or model file path.

    Raises:
        UnknownModelError: If the name is neither built in nor an existing file.
    """
    key = name.upper()
    if key == "PIPELINE":
        return ModelTarget(name, load_model("ARMISH"), Semantics.PIPELINE)
    if key in BUILTIN_MODELS:
        return ModelTarget(name, load_model(key), _SEMANTICS[key])
    return ModelTarget(name, load_model(name), None)


def _check_expectations(test: LitmusTest) -> None:
    for model, _ in test.expectations:
        if model.upper() not in EXPECTATION_MODELS:
            msg = f"{test.name}: expect block names unknown model '{model}', expected one of {EXPECTATION_MODELS}"
            raise ExpectationError(msg)


def _agree(verdicts: list[Verdict]) -> bool | None:
    if len(verdicts) < 2:  # noqa: PLR2004
        return None
    axiomatic, operational = verdicts
    return axiomatic.reachable == operational.reachable and axiomatic.final_states == operational.final_states


def _run_test(
    test: LitmusTest,
    targets: list[ModelTarget],
    config: RunConfig,
    workers: int = 1,
) -> list[Entry]:
    entries = []
    semantics_config = SemanticsConfig(strong_release_acquire=config.strong_release_acquire)
    for target in targets:
        verdicts: list[Verdict] = []
        for engine in config.engines:
            if engine == AXIOMATIC:
                checker = CandidateChecker(target.model, model_name=target.name, workers=workers)
                verdicts.append(checker.verdict(test))
            elif engine == OPERATIONAL and target.semantics is not None:
                explorer = Explorer(target.semantics, semantics_config)
                verdicts.append(explorer.verdict(test, model_name=target.name))
        if config.expect is not None:
            expected = config.expect == "yes"
        elif config.check_expect:
            expected = test.expectation(target.name)
        else:
            expected = None
        entries.append(
            Entry(
                test=test.name,
                model=target.name,
                verdicts=tuple(verdicts),
                expected=expected,
                agreement=_agree(verdicts),
            )
        )
    return entries


def _run_job(job: tuple[LitmusTest, list[ModelTarget], RunConfig]) -> list[Entry]:
    return _run_test(*job)


@dataclass
class Runner:
    """Runs every requested test against every requested model and engine.

    Tests are spread over `WMM_WORKERS` processes; with a single test the
    workers check its candidate executions instead.

    Args:
        config: The run configuration.
        logger: Optional logger for progress messages.
    """

    config: RunConfig
    logger: logging.Logger | None = None

    def _log(self: Runner, msg: str) -> None:
        if self.logger:
            self.logger.info(msg)

    def load_tests(self: Runner) -> list[LitmusTest]:
        """Parse every test of the configuration.

        Raises:
            CorpusError: Listing every file that failed to parse.
            ExpectationError: If `check_expect` is set and an expect block names an unknown model.
        """
        tests = []
        failures: list[tuple[str, Exception]] = []
        for path in self.config.test_paths():
            try:
                tests.append(load_litmus(path))
            except (LitmusSyntaxError, LitmusValidationError, UnicodeDecodeError) as e:
                failures.append((str(path), e))
        if failures:
            raise CorpusError(failures)
        if self.config.check_expect:
            for test in tests:
                _check_expectations(test)
        return tests

    def run(self: Runner) -> Report:
        """Check everything and collect the verdicts, in input order.

        Returns:
            Report: One entry per (test, model).
        """
        targets = [resolve_model(name) for name in self.config.model_names]
        if self.config.engines == (OPERATIONAL,):
            files = [t.name for t in targets if t.semantics is None]
            if files:
                msg = f"model file(s) {files} can only be checked by the axiomatic engine"
                raise ConfigurationError(msg)
        tests = self.load_tests()
        workers = worker_count()
        self._log(f"running {len(tests)} test(s) against {len(targets)} model(s) with {workers} worker(s)")
        if len(tests) == 1 or workers == 1:
            results = [_run_test(test, targets, self.config, workers) for test in tests]
        else:
            with Pool(min(workers, len(tests))) as pool:
                results = pool.map(_run_job, [(test, targets, self.config) for test in tests])
        entries = [entry for result in results for entry in result]
        for entry in entries:
            self._log(entry.summary())
        return Report(tuple(entries))


def run(config: RunConfig, logger: logging.Logger | None = None) -> Report:
    """Run a configuration. See `Runner.run`."""
    return Runner(config, logger).run()
