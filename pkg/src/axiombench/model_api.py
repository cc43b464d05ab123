"""The black-box model contract and the learning-loop primitives built on it.

A candidate model is any object with four methods:

``predict() -> int``
    The current one-step-ahead prediction. Must not change the model.
``update(x: int) -> None``
    Consume the next observed input (an ``L``-bit pattern).
``fingerprint() -> Hashable``
    An equality-comparable summary of the configuration. Two instances have
    equal fingerprints exactly when the model author considers them to be in
    the same configuration.
``clone() -> Model``
    An independent copy in the same configuration.

Models are handed to the harness through a factory: an object with a
``blank()`` method returning a fresh uninformed instance, a ``descriptor``
string and the input ``width`` it expects.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Optional, Protocol, runtime_checkable

from .errors import HarnessIncompatibility, UsageError
from .signals import check_input

REQUIRED_METHODS = ("predict", "update", "fingerprint", "clone")


@runtime_checkable
class Model(Protocol):
    def predict(self) -> int: ...

    def update(self, x: int) -> None: ...

    def fingerprint(self) -> Hashable: ...

    def clone(self) -> "Model": ...


class ModelFactory(Protocol):
    descriptor: str
    width: int

    def blank(self) -> Model: ...


@dataclass(frozen=True)
class LearnOutcome:
    learned: bool
    tau: Optional[int]  # None means never learned within the budget
    passes: int


def check_model(m, width: int) -> None:
    """Raise :class:`HarnessIncompatibility` unless ``m`` honours the contract."""
    missing = [name for name in REQUIRED_METHODS if not callable(getattr(m, name, None))]
    if missing:
        raise HarnessIncompatibility(
            f"{type(m).__name__} lacks required method(s): {', '.join(missing)}")
    p = m.predict()
    try:
        check_input(p, width)
    except UsageError as exc:
        raise HarnessIncompatibility(f"predict() returned {p!r}: {exc}") from None
    try:
        hash(m.fingerprint())
    except TypeError as exc:
        raise HarnessIncompatibility(f"fingerprint is not hashable: {exc}") from None


def check_factory(factory) -> None:
    if not callable(getattr(factory, "blank", None)):
        raise HarnessIncompatibility("factory has no blank() constructor")
    width = getattr(factory, "width", None)
    if not isinstance(width, int) or width < 1:
        raise HarnessIncompatibility("factory does not declare a positive input width")
    try:
        blank = factory.blank()
    except Exception as exc:
        raise HarnessIncompatibility(f"blank() failed: {exc!r}") from exc
    check_model(blank, width)


def predict(m) -> int:
    return m.predict()


def update(m, x: int, width: int | None = None) -> None:
    if width is not None:
        check_input(x, width)
    m.update(x)


def fingerprint(m) -> Hashable:
    try:
        fp = m.fingerprint
    except AttributeError:
        raise HarnessIncompatibility(f"{type(m).__name__} has no fingerprint()") from None
    return fp()


def clone(m):
    try:
        cl = m.clone
    except AttributeError:
        raise HarnessIncompatibility(f"{type(m).__name__} cannot be cloned") from None
    return cl()


def feed(m, s: Iterable[int]) -> None:
    upd = m.update
    for x in s:
        upd(x)


def autoregress(m, n: int) -> tuple:
    """Roll the model forward ``n`` steps on its own predictions."""
    if n < 0:
        raise UsageError("n must be non-negative")
    out = []
    for _ in range(n):
        p = m.predict()
        out.append(p)
        m.update(p)
    return tuple(out)


def learn(m, phi: Iterable[int], max_passes: int,
          on_pass: Callable[[int, bool], None] | None = None) -> LearnOutcome:
    """Teacher-force ``phi`` repeatedly until a pass is predicted without error.

    A pass whose every prediction matches the input fed next means the model
    state before that pass regenerates ``phi`` autoregressively. The pass index
    ``n`` of the first such pass is minimal by construction and the learning
    time is ``len(phi) * n``.
    """
    if max_passes < 1:
        raise UsageError("max_passes must be at least 1")
    items = tuple(phi)
    if not items:
        raise UsageError("cannot learn an empty sequence")
    pred = m.predict
    upd = m.update
    for n in range(1, max_passes + 1):
        ok = True
        for x in items:
            if ok and pred() != x:
                ok = False
            upd(x)
        if on_pass is not None:
            on_pass(n, ok)
        if ok:
            return LearnOutcome(True, len(items) * n, n)
    return LearnOutcome(False, None, max_passes)


# Registry of named model factories. ``builder(width)`` returns a factory.

_REGISTRY: dict = {}


def register_model(name: str, builder: Callable[[int], ModelFactory]) -> None:
    _REGISTRY[name] = builder


def registered_models() -> list:
    return sorted(_REGISTRY)


def resolve_model(name: str, width: int) -> ModelFactory:
    """Look ``name`` up in the registry, or import ``package.module:attr``."""
    if name in _REGISTRY:
        return _REGISTRY[name](width)
    if ":" in name:
        import importlib

        mod_name, _, attr = name.partition(":")
        try:
            obj = getattr(importlib.import_module(mod_name), attr)
        except (ImportError, AttributeError) as exc:
            raise UsageError(f"cannot import model {name!r}: {exc}") from None
        return obj(width) if callable(obj) and not hasattr(obj, "blank") else obj
    raise UsageError(f"unknown model {name!r}; known: {', '.join(registered_models())}")
