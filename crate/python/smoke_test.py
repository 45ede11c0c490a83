#!/usr/bin/env python3
"""Build the ssdc_py extension module and exercise it end to end."""

import shutil
import subprocess
import sys
import sysconfig
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent

E1_SSG = """\
problem ssg
capacity 7
items 4
size 1 1
size 2 2
size 3 2
size 4 3
graph dico ((v1 + v3) -> (v2 * v4))
"""

E2_SSGW = """\
problem ssgw
capacity 7
items 6
size 1 2
size 2 1
size 3 4
size 4 3
size 5 2
size 6 3
graph msp (((v1 * v2) | (v3 * v4)) * (v5 * v6))
"""

CHAIN_SSG = """\
problem ssg
capacity 5
items 2
size 1 2
size 2 3
graph edges
arc 1 2
end
"""


def build_module(dest: Path) -> None:
    subprocess.run(
        ["cargo", "build", "-p", "ssdc-py"], cwd=REPO, check=True
    )
    built = REPO / "target" / "debug" / "libssdc_py.so"
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    shutil.copy(built, dest / f"ssdc_py{suffix}")


def main() -> None:
    with tempfile.TemporaryDirectory() as tmp:
        build_module(Path(tmp))
        sys.path.insert(0, tmp)
        import ssdc_py

        inst = ssdc_py.Instance(E1_SSG)
        assert inst.kind == "ssg"
        assert inst.capacity == 7
        assert inst.n == 4
        assert inst.sizes == [1, 2, 2, 3]
        assert (1, 2) in inst.arcs() and (4, 2) in inst.arcs()
        assert inst.solve() == (7, [2, 3, 4])
        assert inst.check([2, 3, 4]) == "FEASIBLE 7"
        assert inst.check([1]) == "INFEASIBLE digraph-constraint v2"
        assert inst.check([]) == "FEASIBLE 0"
        assert ssdc_py.Instance(inst.serialize()).solve() == inst.solve()

        weak = ssdc_py.Instance(E2_SSGW)
        assert weak.solve() == (7, [3, 4])
        assert weak.check([3]) == "INFEASIBLE weak-digraph-constraint v4"

        chain = ssdc_py.Instance(CHAIN_SSG)
        assert chain.decompose() == "(v1 * v2)"
        assert "arc_1_2: x1 - x2 <= 0;" in chain.export_ip()

        a = ssdc_py.generate("msp", 6, 12, 5, seed=42)
        b = ssdc_py.generate("msp", 6, 12, 5, seed=42)
        assert a.serialize() == b.serialize()
        assert a.solve() == b.solve()

        try:
            ssdc_py.Instance("problem ssg\n")
        except ValueError:
            pass
        else:
            raise AssertionError("truncated instance must raise ValueError")

        print("smoke test passed")


if __name__ == "__main__":
    main()
