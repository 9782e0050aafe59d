"""Access to the constraint systems and models shipped with the package."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .model import Interpretation
from .sexpr import read_model, read_system
from .terms import ConstraintSystem


def corpus_dir() -> Path:
    return Path(str(resources.files("ubsolve") / "corpus"))


def corpus_files() -> list[Path]:
    """Bundled ``.cs`` files in name order."""
    return sorted(corpus_dir().glob("*.cs"))


def load_system(name: str) -> ConstraintSystem:
    """Bundled system by stem, e.g. ``load_system("dup")``."""
    path = corpus_dir() / f"{name}.cs"
    if not path.exists():
        raise FileNotFoundError(f"no bundled system named {name!r}")
    return read_system(path)


def load_model(name: str) -> Interpretation:
    path = corpus_dir() / f"{name}.model"
    if not path.exists():
        raise FileNotFoundError(f"no bundled model named {name!r}")
    return read_model(path)
