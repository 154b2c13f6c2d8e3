"""Regenerate tests/golden/*.out from the CLI.  Review the diff before committing."""

import contextlib
import io
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

from cli_cases import CASES  # noqa: E402

from dehncolor.cli import main  # noqa: E402

DATA = ROOT / "data" / "diagrams"
OUT = ROOT / "tests" / "golden"


def expand(argv):
    return [str(DATA / f"{a[1:]}.dg") if a.startswith("@") else a for a in argv]


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(expand(argv))
    return code, out.getvalue(), err.getvalue()


if __name__ == "__main__":
    OUT.mkdir(exist_ok=True)
    for name, (argv, expected) in CASES.items():
        code, out, err = run(argv)
        if code != expected:
            sys.exit(f"{name}: exit {code}, expected {expected}\n{err}")
        (OUT / f"{name}.out").write_text(out + err, encoding="utf-8")
    print(f"wrote {len(CASES)} files to {OUT}")
