"""Builds the extension module with cargo and exercises it from Python."""

import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load():
    subprocess.run(["cargo", "build", "--release", "-p", "origami-py"], cwd=ROOT, check=True)
    lib = ROOT / "target" / "release" / "liborigami_py.so"
    dest = Path(tempfile.mkdtemp()) / "origami_py.so"
    shutil.copy(lib, dest)
    sys.path.insert(0, str(dest.parent))
    import origami_py

    return origami_py


def main():
    m = load()

    g3 = m.orbit_of("(2,3),(1,2,3)")
    assert g3.size == 3 and g3.stratum == "H(2)", g3
    assert g3.genus == 0

    a = m.orbit_of("(1,1,0,2,2,0)")
    b = m.orbit_of("(1,1,0,2,2,1)")
    assert (a.size, b.size) == (18, 9), (a, b)
    assert (a.hlk, b.hlk) == ("(0,[3,1,1])", "(2,[1,1,1])")

    sizes = sorted(o.size for o in m.stratum_orbits("H(1,1)", 7))
    assert sizes == [16, 144], sizes

    assert m.stratum_of("(1,2,3,4),(1,2)") == "H(2)"
    assert m.class_number(-23) == (3, 2)

    try:
        m.hlk("(1,2),(3,4)")
    except ValueError as e:
        print("rejected:", e)
    else:
        raise AssertionError("disconnected surface accepted")

    for ident, title, passed in m.run_suite("h2", 8):
        print("PASS" if passed else "FAIL", ident, title)
    print("smoke test ok")


if __name__ == "__main__":
    main()
