"""Regenerate tests/golden/ from the scenario files.

Only run this after checking by hand that a change in output is intended.
"""

import contextlib
import io
from pathlib import Path

from sharelat.cli import main

ROOT = Path(__file__).resolve().parent.parent

GOLDEN = {
    "both-lin-share-compare.txt": ["analyze", "--compare", "scenarios/both-lin-share.scn"],
    "both-lin-share-asub.txt": ["analyze", "--domain", "asub", "scenarios/both-lin-share.scn"],
    "cyclic.txt": ["analyze", "scenarios/cyclic.scn"],
    "empty-bindings.txt": ["analyze", "scenarios/empty-bindings.scn"],
    "cyclic-abstract.json": ["abstract", "scenarios/cyclic.scn"],
    "order-first.txt": ["analyze", "scenarios/order-first.scn"],
    "order-second.txt": ["analyze", "scenarios/order-second.scn"],
}


def render(argv) -> str:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main([argv[0], *argv[1:-1], str(ROOT / argv[-1])])
    assert code == 0, argv
    return buf.getvalue()


if __name__ == "__main__":
    out = ROOT / "tests" / "golden"
    out.mkdir(parents=True, exist_ok=True)
    for name, argv in GOLDEN.items():
        (out / name).write_text(render(argv), encoding="utf-8")
        print("wrote", name)
