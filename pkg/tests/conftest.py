import os
from pathlib import Path

import pytest

from miniqt_bmc import VerifierConfig

ROOT = Path(__file__).resolve().parents[1]
MODELS_DIR = ROOT / "models"
BENCH_DIR = ROOT / "benchmarks"
MANIFEST = BENCH_DIR / "suite.manifest"


@pytest.fixture
def cfg() -> VerifierConfig:
    return VerifierConfig(include_paths=(str(MODELS_DIR),))


@pytest.fixture
def bare_cfg() -> VerifierConfig:
    return VerifierConfig()


def corpus_files() -> list[Path]:
    return sorted(BENCH_DIR.rglob("*.cpp"))


def read(path: Path) -> str:
    return path.read_text(encoding="utf-8")
