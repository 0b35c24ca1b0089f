from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from wmm.litmus.ast import (
    And,
    Atom,
    Branch,
    Fence,
    IntLit,
    LitmusTest,
    Load,
    LocalAssign,
    Reg,
    Store,
    Swap,
    Thread,
)
from wmm.litmus.parser import validate_litmus

if TYPE_CHECKING:
    import numpy as np

    from wmm.litmus.ast import Expr, Instruction, Postcondition

__all__ = ["random_litmus"]

_KINDS = ("store", "load", "fence", "swap", "assign", "branch")


@dataclass
class _ThreadBuilder:
    rng: np.random.Generator
    index: int
    values: tuple[int, ...]
    tag: str | None
    loaded: list[str] = field(default_factory=list)
    counter: int = 0

    def register(self: _ThreadBuilder) -> str:
        self.counter += 1
        return f"r{self.index}{self.counter}"

    def value(self: _ThreadBuilder) -> Expr:
        if self.loaded and self.rng.random() < 0.3:  # noqa: PLR2004
            return Reg(self.loaded[int(self.rng.integers(len(self.loaded)))])
        return IntLit(int(self.rng.choice(self.values)))

    def store(self: _ThreadBuilder, location: str) -> Store:
        release = self.tag == "release" and bool(self.rng.random() < 0.5)  # noqa: PLR2004
        return Store(location, self.value(), release=release)

    def load(self: _ThreadBuilder, location: str) -> Load:
        acquire = self.tag == "acquire" and bool(self.rng.random() < 0.5)  # noqa: PLR2004
        deps: tuple[str, ...] = ()
        if self.loaded and self.rng.random() < 0.3:  # noqa: PLR2004
            deps = (self.loaded[-1],)
        reg = self.register()
        self.loaded.append(reg)
        return Load(reg, location, acquire=acquire, deps=deps)

    def swap(self: _ThreadBuilder, location: str) -> Swap:
        expr = self.value()
        reg = self.register()
        self.loaded.append(reg)
        return Swap(reg, location, expr)

    def assign(self: _ThreadBuilder) -> LocalAssign:
        expr = self.value()
        reg = self.register()
        return LocalAssign(reg, expr)


def random_litmus(  # noqa: PLR0913
    rng: np.random.Generator,
    *,
    max_threads: int = 3,
    max_instructions: int = 4,
    locations: tuple[str, ...] = ("x", "y"),
    values: tuple[int, ...] = (0, 1, 2),
    max_accesses_per_location: int = 3,
    swaps: bool = True,
    tags: bool = True,
    branches: bool = True,
    name: str = "random",
) -> LitmusTest:
    """Generate a small random loop-free litmus test.

    Threads are named P0, P1, ...; registers `r<thread><k>`. Every location
    starts at 0 and is accessed at most `max_accesses_per_location` times.
    A program tags either release stores or acquire loads, never both. Branches
    are one-armed, test a register loaded earlier in the thread and guard a
    single memory access. The postcondition is a conjunction of one or two atoms.

    Args:
        rng: Source of randomness.
        max_threads: Upper bound on the number of threads (at least 2 are generated).
        max_instructions: Upper bound on instructions per thread, branch bodies included.
        locations: Shared variable names.
        values: Literals used in stores, swaps and the postcondition.
        max_accesses_per_location: Cap on memory accesses per location over all threads.
        swaps: Allow swap instructions.
        tags: Allow release/acquire tags.
        branches: Allow branches.
        name: Test name.

    Returns:
        LitmusTest: A validated test.
    """
    kinds = [k for k in _KINDS if (swaps or k != "swap") and (branches or k != "branch")]
    tag = str(rng.choice(["release", "acquire"])) if tags and rng.random() < 0.5 else None  # noqa: PLR2004
    accesses = dict.fromkeys(locations, 0)

    def pick_location() -> str | None:
        free = [loc for loc in locations if accesses[loc] < max_accesses_per_location]
        if not free:
            return None
        loc = free[int(rng.integers(len(free)))]
        accesses[loc] += 1
        return loc

    def access(builder: _ThreadBuilder, kind: str) -> Instruction:
        loc = pick_location()
        if loc is None:
            return Fence() if kind != "assign" else builder.assign()
        if kind == "store":
            return builder.store(loc)
        if kind == "load":
            return builder.load(loc)
        return builder.swap(loc)

    threads = []
    n_threads = int(rng.integers(2, max(2, max_threads) + 1))
    for t in range(n_threads):
        builder = _ThreadBuilder(rng, t, values, tag)
        body: list[Instruction] = []
        budget = int(rng.integers(1, max_instructions + 1))
        while budget > 0:
            kind = str(rng.choice(kinds))
            if kind == "branch" and builder.loaded and budget >= 2:  # noqa: PLR2004
                condition = Reg(builder.loaded[int(rng.integers(len(builder.loaded)))])
                guarded = access(builder, str(rng.choice(["store", "load"])))
                body.append(Branch(condition, int(rng.choice(values)), (guarded,)))
                budget -= 2
                continue
            if kind == "branch":
                kind = "store"
            if kind == "fence":
                body.append(Fence())
            elif kind == "assign":
                body.append(builder.assign())
            else:
                body.append(access(builder, kind))
            budget -= 1
        threads.append(Thread(f"P{t}", tuple(body)))

    names = [reg for thread in threads for reg in thread.registers()] + list(locations)
    atoms: list[Postcondition] = [
        Atom(names[int(rng.integers(len(names)))], int(rng.choice(values)))
        for _ in range(int(rng.integers(1, 3)))
    ]
    post = atoms[0] if len(atoms) == 1 else And(atoms[0], atoms[1])
    test = LitmusTest(
        name=name,
        init=tuple((loc, 0) for loc in locations),
        threads=tuple(threads),
        post=post,
    )
    validate_litmus(test)
    return test
