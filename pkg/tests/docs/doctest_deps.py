from __future__ import annotations

from abc import ABC, abstractmethod
from contextlib import contextmanager
from pathlib import Path
from typing import TYPE_CHECKING, ClassVar, TypeVar

if TYPE_CHECKING:
    from collections.abc import Iterator

    import pytest

D = TypeVar("D", bound="PageFixture")


class PageFixture(ABC):
    """Environment a documentation page needs around its code blocks."""

    page: ClassVar[Path]

    @abstractmethod
    def setup(self: PageFixture, monkeypatch: pytest.MonkeyPatch) -> None: ...

    @abstractmethod
    def teardown(self: PageFixture) -> None: ...


class PageFixtures:
    def __init__(self: PageFixtures) -> None:
        self._by_page: dict[Path, type[PageFixture]] = {}

    def register(self: PageFixtures, fixture: type[D]) -> type[D]:
        if fixture.page in self._by_page:
            msg = f"a fixture for '{fixture.page}' is already registered"
            raise ValueError(msg)
        self._by_page[fixture.page] = fixture
        return fixture

    @contextmanager
    def around(self: PageFixtures, page: Path, monkeypatch: pytest.MonkeyPatch) -> Iterator[None]:
        """Set up the page's fixture, if any, and always tear it down afterwards."""
        fixture_cls = self._by_page.get(page)
        if fixture_cls is None:
            yield
            return
        fixture = fixture_cls()
        fixture.setup(monkeypatch)
        try:
            yield
        finally:
            fixture.teardown()


PAGE_FIXTURES = PageFixtures()
