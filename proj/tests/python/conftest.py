import json
import os
import pathlib
import subprocess

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]


@pytest.fixture(scope="session")
def schema():
    return json.loads((ROOT / "schemas" / "verify_report.schema.json").read_text())


@pytest.fixture(scope="session")
def cli():
    exe = os.environ.get("TNRANK_CLI")
    if not exe:
        pytest.skip("TNRANK_CLI is not set")

    def run(*args, check=True):
        proc = subprocess.run([exe, *map(str, args)], capture_output=True, text=True)
        if check and proc.returncode != 0:
            raise AssertionError(f"exit {proc.returncode}: {proc.stderr}")
        return proc

    return run
