"""Bundled PGM test hosts."""
from importlib import resources

from .pixelio import Image, load_pgm


def list_fixtures() -> list[str]:
    files = resources.files(__package__).joinpath("data")
    return sorted(p.name[:-4] for p in files.iterdir() if p.name.endswith(".pgm"))


def fixture_path(name: str):
    """Traversable for ``data/<name>.pgm``."""
    return resources.files(__package__).joinpath("data", f"{name}.pgm")


def load_fixture(name: str) -> Image:
    return load_pgm(fixture_path(name).read_bytes())
