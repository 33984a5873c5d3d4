import os
import pathlib

import pytest

ROOT = pathlib.Path(os.environ.get("GINLAB_SOURCE_DIR", pathlib.Path(__file__).resolve().parents[2]))


@pytest.fixture(scope="session")
def root():
    return ROOT


@pytest.fixture(scope="session")
def cli():
    path = os.environ.get("GINLAB_CLI", str(ROOT / "build" / "ginlab"))
    if not pathlib.Path(path).exists():
        pytest.skip("ginlab executable not built")
    return path
