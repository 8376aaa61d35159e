"""Fixed CLI command corpus with frozen outputs in tests/golden/.

Run ``python3 tests/golden_corpus.py`` to regenerate the golden files after a
deliberate output change; the tests compare byte for byte.
"""

from __future__ import annotations

import contextlib
import io
import json
from pathlib import Path

from swduality.cli import main

GOLDEN_DIR = Path(__file__).parent / "golden"

# (name, argv) -- every subcommand appears at least once
CORPUS = [
    ("denom_a2_n5_k2_l2", ["denom", "--family", "A2", "--N", "5", "--k", "2", "--l", "2"]),
    ("denom_a1_n4_k1_l1_json", ["denom", "--family", "A1", "--N", "4", "--k", "1", "--l", "1", "--format", "json"]),
    ("denom_a1_n6_k2_l3", ["denom", "--family", "A1", "--N", "6", "--k", "2", "--l", "3"]),
    ("denom_bad_index", ["denom", "--family", "A2", "--N", "5", "--k", "9", "--l", "1"]),
    ("quiver_a1_n3_text", ["quiver", "--family", "A1", "--N", "3", "--pmin", "0", "--pmax", "3"]),
    ("quiver_a2_n4_dot", ["quiver", "--family", "A2", "--N", "4", "--pmin", "-2", "--pmax", "2", "--format", "dot"]),
    ("quiver_a2_n5_json", ["quiver", "--family", "A2", "--N", "5", "--pmin", "-2", "--pmax", "2", "--format", "json"]),
    ("quiver_a1_n4_csv", ["quiver", "--family", "A1", "--N", "4", "--pmin", "-2", "--pmax", "2", "--format", "csv"]),
    ("pi2_verify_n4", ["pi2-verify", "--N", "4", "--pmin", "-6", "--pmax", "6"]),
    ("pi2_verify_n3_5_json", ["pi2-verify", "--N", "3..5", "--pmin", "-4", "--pmax", "4", "--format", "json"]),
    ("rseries_n3_g", ["verify-rseries", "--N", "3", "--psi-def", "g"]),
    ("rseries_n3_product_json", ["verify-rseries", "--N", "3", "--psi-def", "product", "--a-range=-1..1", "--format", "json"]),
    ("rseries_n3_product_text", ["verify-rseries", "--N", "3", "--psi-def", "product", "--a-range=0..1"]),
    ("klr_compose_case_v_json", ["klr", "compose", "--seg", "2,3", "--seg", "1,2", "--format", "json"]),
    ("klr_compose_case_vi", ["klr", "compose", "--seg", "1,1", "--seg", "0,0"]),
    ("klr_rmatrix_json", ["klr", "rmatrix", "--seg", "0,1", "--seg", "1,1", "--format", "json"]),
    ("klr_rmatrix_text", ["klr", "rmatrix", "--seg", "1,1", "--seg", "1,1"]),
    ("klr_yangbaxter", ["klr", "yangbaxter", "--seg", "1,1", "--seg", "2,2", "--seg", "3,3"]),
    ("klr_yangbaxter_json", ["klr", "yangbaxter", "--seg", "0,1", "--seg", "1,1", "--seg", "0,0", "--format", "json"]),
    ("klr_compose_missing_seg", ["klr", "compose", "--seg", "1,1"]),
    ("kt_canonicalize", ["ktheory", "canonicalize", "--N", "4", "--seg", "0,0", "--seg", "1,2", "--seg", "5,8"]),
    ("kt_canonicalize_zero_json", ["ktheory", "canonicalize", "--N", "4", "--seg", "0,4", "--format", "json"]),
    ("kt_decompose", ["ktheory", "decompose", "--N", "4", "--seg", "1,1", "--seg", "0,0"]),
    ("kt_decompose_json", ["ktheory", "decompose", "--N", "5", "--seg", "2,3", "--seg", "1,2", "--format", "json"]),
    ("kt_dim", ["ktheory", "dim", "--N", "4", "--seg", "1,1", "--seg", "0,0"]),
    ("kt_dim_t2_json", ["ktheory", "dim", "--N", "4", "--t", "2", "--seg", "0,2", "--seg", "1,1", "--format", "json"]),
    ("kt_fusion_condition_i", ["ktheory", "fusion-check", "--N", "4", "--i", "1", "--j", "1", "--k", "2",
                               "--x", "(-q)^-1", "--y", "(-q)^1", "--z", "(-q)^0"]),
    ("kt_fusion_condition_ii_json", ["ktheory", "fusion-check", "--N", "4", "--i", "3", "--j", "2", "--k", "1",
                                     "--x", "1,-2", "--y", "1,1", "--z", "1,0", "--format", "json"]),
    ("unknown_command", ["frobnicate"]),
    ("unknown_flag", ["denom", "--family", "A1", "--N", "4", "--k", "1", "--l", "1", "--bogus"]),
]


def run_case(argv):
    """Run the CLI in-process; return (exit code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


def render(code: int, stdout: str, stderr: str) -> str:
    """Single golden text per case: exit code, then the two streams."""
    return f"exit: {code}\n--- stdout ---\n{stdout}--- stderr ---\n{stderr}"


def golden_path(name: str) -> Path:
    return GOLDEN_DIR / f"{name}.txt"


def regenerate():
    GOLDEN_DIR.mkdir(exist_ok=True)
    index = {}
    for name, argv in CORPUS:
        code, out, err = run_case(argv)
        golden_path(name).write_text(render(code, out, err))
        index[name] = {"argv": argv, "exit": code}
    (GOLDEN_DIR / "index.json").write_text(json.dumps(index, indent=2, sort_keys=True) + "\n")


if __name__ == "__main__":
    regenerate()
