#!/usr/bin/env python3
"""Run the acceptance suite with its per-criterion pass/fail lines visible."""

from __future__ import annotations

import pathlib
import subprocess
import sys


def main() -> int:
    root = pathlib.Path(__file__).resolve().parents[1]
    return subprocess.run(
        [sys.executable, "-m", "pytest", str(root / "tests" / "test_acceptance.py"), "-v", "-s"],
        cwd=root,
    ).returncode


if __name__ == "__main__":
    sys.exit(main())
