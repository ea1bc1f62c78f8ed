"""Command line: build algebras from JSON specs, verify dumps, reproduce the table.

Exit codes: 0 success, 2 input error, 3 construction failure, 4 verification
failure or table mismatch. Reports are JSON with sorted keys and contain no
timings; timings go to stderr with ``-v``.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .composition import CompositionAlgebra, CompositionError, algebra_from_json, composition_algebra
from .exactfield import Field, FieldError, FieldSpec, GF, make_field
from .jternary import (JTernaryError, allison_certify, check_axioms, model_from_json, predicted_superdim,
                       semisimplify_model)
from .liecore import REDUCTION_PRIME, LieAlgebra, LieError, center, grading_witness, is_simple, jacobi_check, quotient
from .semisimplify import (SemisimplifyError, build_super_from_tensor, even_part_invariants, super_label)
from .structurable import StructurableError, build_graded_lie, default_v
from .tensoralg import TensorAlgebra, build_tensor

EXIT_OK, EXIT_INPUT, EXIT_CONSTRUCTION, EXIT_VERIFY = 0, 2, 3, 4

LETTERS = {"Phi": 0, "E": 1, "Q": 2, "O": 3}
_LABEL = {1: "Phi", 2: "E", 4: "Q", 8: "O"}

# Expected values for the table. Each group carries its provenance.
PUBLISHED_DIMS = {
    ("E", "Phi"): 8, ("Q", "Phi"): 21, ("O", "Phi"): 52, ("Q", "E"): 35,
    ("E", "O"): 78, ("Q", "Q"): 66, ("Q", "O"): 133, ("O", "O"): 248, ("E", "E"): "X",
}
DIMS_PROVENANCE = "published dimension table (characteristic 0, E x E marked X)"
PUBLISHED_CENTERS = {("E", "Phi"): 1, ("Q", "E"): 1, ("E", "O"): 1}
CENTERS_PROVENANCE = "published remark: center 1 exactly for dims 8, 35, 78 in characteristic 3"
PUBLISHED_SUPER = {
    ("E", "Phi"): ((0, 2), False), ("Q", "Phi"): ((4, 4), True), ("O", "Phi"): ((15, 8), True),
    ("Q", "E"): ((6, 8), True), ("E", "O"): ((21, 16), True), ("Q", "Q"): ((16, 16), True),
    ("Q", "O"): ((39, 32), True), ("O", "O"): ((78, 64), True), ("E", "E"): (None, False),
    ("Phi", "Phi"): (None, False),
}
SUPER_PROVENANCE = "published superalgebra list and simplicity theorem"
TABLE_SHAPES = [("E", "Phi"), ("Q", "Phi"), ("O", "Phi"), ("Q", "E"), ("E", "O"), ("Q", "Q"),
                ("Q", "O"), ("O", "O"), ("E", "E"), ("Phi", "Phi")]


class InputError(Exception):
    pass


class ConstructionError(Exception):
    def __init__(self, msg, report=None):
        super().__init__(msg)
        self.report = report or {}


@dataclass
class RunConfig:
    command: str
    path: str | None
    field: Field
    mode: str
    seed: int | None
    count: int
    out: str | None
    v_slice: str | None
    allow_excluded: bool
    verbosity: int


def _log(cfg, msg, t0=None):
    if cfg.verbosity:
        extra = f" ({time.perf_counter() - t0:.2f}s)" if t0 is not None else ""
        print(f"[lsa3] {msg}{extra}", file=sys.stderr)


def _plain(o):
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.bool_):
        return bool(o)
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


def dumps_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, default=_plain) + "\n"


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


# -- spec parsing ---------------------------------------------------------------------


def _composition(F: Field, obj) -> CompositionAlgebra:
    if isinstance(obj, str) and obj in LETTERS:
        return composition_algebra(F, [1] * LETTERS[obj])
    if isinstance(obj, int) and 0 <= obj <= 3:
        return composition_algebra(F, [1] * obj)
    if isinstance(obj, dict):
        return algebra_from_json(obj)
    raise InputError(f"bad composition algebra {obj!r}; use Phi, E, Q, O, a doubling count or a JSON spec")


def _model_algebra(obj):
    """Letters and ``"QxE"`` strings in model specs become doubling counts."""
    if isinstance(obj, str):
        parts = obj.split("x")
        if len(parts) == 2 and all(p in LETTERS for p in parts):
            return {"left": LETTERS[parts[0]], "right": LETTERS[parts[1]]}
        if obj in LETTERS:
            return LETTERS[obj]
        raise InputError(f"bad algebra {obj!r}")
    return obj


def _tensor(F: Field, spec) -> TensorAlgebra:
    try:
        return build_tensor(_composition(F, spec["left"]), _composition(F, spec["right"]))
    except KeyError as exc:
        raise InputError(f"spec is missing {exc}") from exc


def shape_of(T: TensorAlgebra):
    return _LABEL[T.d1], _LABEL[T.d2]


def load_spec(text_or_path: str):
    t = text_or_path.strip()
    if not t.startswith("{"):
        try:
            t = Path(text_or_path).read_text()
        except OSError as exc:
            raise InputError(f"cannot read spec: {exc}") from exc
    try:
        obj = json.loads(t)
    except ValueError as exc:
        raise InputError(f"spec is not JSON: {exc}") from exc
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InputError("spec must be a JSON object with a 'kind'")
    return obj


# -- suites ---------------------------------------------------------------------------


def _jacobi(cfg, L):
    t0 = time.perf_counter()
    rep = jacobi_check(L, mode=cfg.mode, count=cfg.count, seed=cfg.seed or 0)
    _log(cfg, f"jacobi {cfg.mode}", t0)
    return rep


def _lie_summary(cfg, L: LieAlgebra, seed=0):
    """Center, simplicity and simplicity modulo the center."""
    t0 = time.perf_counter()
    Z = center(L)
    out = {"center_dim": int(Z.shape[0])}
    if Z.shape[0]:
        out["simple"] = False
        Q, _ = quotient(L, Z)
        out["quotient_simple"] = bool(is_simple(Q, seed=seed).simple)
    else:
        out["simple"] = bool(is_simple(L, seed=seed).simple)
    _log(cfg, "center and simplicity", t0)
    return out


def _super_summary(cfg, S: LieAlgebra, seed=0):
    t0 = time.perf_counter()
    out = {"superdim": list(S.superdim), "simple": bool(is_simple(S, seed=seed).simple),
           "label": super_label(S)}
    _log(cfg, "super simplicity", t0)
    return out


# -- build ----------------------------------------------------------------------------


def _check_super_input(F, T, allow_excluded):
    if F.characteristic != 3:
        raise InputError("superalgebras are built in characteristic 3 only")
    pair = tuple(sorted((T.d1, T.d2)))
    if pair == (2, 2) and not allow_excluded:
        raise InputError("excluded shape E x E'")
    if T.dim_S == 0:
        raise InputError("excluded shape Phi x Phi: no skew elements")


def build_tensor_kind(cfg, spec):
    F = cfg.field
    T = _tensor(F, spec)
    if tuple(sorted((T.d1, T.d2))) == (2, 2) and not cfg.allow_excluded:
        raise InputError("excluded shape E x E'")
    form = spec.get("form", "integral")
    if form not in ("integral", "image"):
        raise InputError(f"unknown form {form!r}")
    t0 = time.perf_counter()
    L = build_graded_lie(T, form=form)
    _log(cfg, f"built {L.name} dim {L.n}", t0)
    report = {"kind": "tensor", "shape": "x".join(shape_of(T)), "form": form, "dim": L.n,
              "components": L.component_dims()}
    rep = _jacobi(cfg, L)
    report["jacobi"] = rep.to_json()
    wit = grading_witness(L)
    report["grading"] = "pass" if wit is None else {"fail": list(wit)}
    if not rep.passed or wit is not None:
        raise ConstructionError("graded Lie algebra fails its identities", report)
    report.update(_lie_summary(cfg, L))
    expect = {"center_dim": report["center_dim"], "simple": report["simple"]}
    return L, report, expect


def build_super_kind(cfg, spec):
    F = cfg.field
    T = _tensor(F, spec)
    _check_super_input(F, T, cfg.allow_excluded)
    v = default_v(T, side=cfg.v_slice) if cfg.v_slice else None
    t0 = time.perf_counter()
    S = build_super_from_tensor(T, v=v, allow_excluded=cfg.allow_excluded, check=False)
    _log(cfg, f"built {S.name} superdim {S.superdim}", t0)
    report = {"kind": "super", "shape": "x".join(shape_of(T))}
    rep = _jacobi(cfg, S)
    report["super_jacobi"] = rep.to_json()
    if not rep.passed:
        raise ConstructionError("superalgebra fails the super-Jacobi identity", report)
    report.update(_super_summary(cfg, S))
    report["invariants"] = even_part_invariants(S)
    expect = {"superdim": report["superdim"], "simple": report["simple"]}
    return S, report, expect


def _algebra_letters(obj) -> str:
    """``"E"``, ``"Q"``, ``"QE"`` ... for a normalized model algebra spec."""
    names = {v: k for k, v in LETTERS.items()}
    if isinstance(obj, int):
        return names[obj]
    if isinstance(obj, dict) and "left" in obj:
        return _algebra_letters(obj["left"]) + _algebra_letters(obj["right"])
    if isinstance(obj, dict):
        return names[len(obj.get("doublings", []))]
    raise InputError(f"bad algebra {obj!r}")


def build_model_kind(cfg, spec):
    F = cfg.field
    spec = dict(spec)
    for key in ("C", "A"):
        if key in spec:
            spec[key] = _model_algebra(spec[key])
    t0 = time.perf_counter()
    model = model_from_json(F, spec)
    _log(cfg, f"built {model.kind} model dim {model.dim}", t0)
    report = {"kind": model.kind, "params": {k: v for k, v in spec.items() if k != "kind"}}
    allison = allison_certify(model)
    report["allison"] = {"passed": allison.passed, "jordan_type": [list(t) for t in allison.jordan_type],
                         "expected": [list(t) for t in allison.expected]}
    t0 = time.perf_counter()
    ax = check_axioms(model.triple_system(), seed=cfg.seed or 0)
    _log(cfg, "j-ternary axioms", t0)
    report["axioms"] = {"passed": ax.passed, "mode": ax.mode, "checked": ax.checked}
    if ax.witness is not None:
        report["axioms"]["witness"] = [int(t) for t in np.ravel(ax.witness)]
    if not allison.passed or not ax.passed:
        raise ConstructionError("matrix model fails its certificates", report)
    S = semisimplify_model(model)
    rep = _jacobi(cfg, S)
    report["super_jacobi"] = rep.to_json()
    if not rep.passed:
        raise ConstructionError("semisimplification fails the super-Jacobi identity", report)
    report.update(_super_summary(cfg, S))
    if model.kind == "ge3":
        label, sd = predicted_superdim("ge3", r=model.params["r"], s=model.params["s"],
                                       dimC=model.params["dimC"])
    else:
        label, sd = predicted_superdim("deg2", n=model.params["n"], A=_algebra_letters(spec.get("A", 1)))
    report["prediction"] = {"label": label, "superdim": list(sd), "match": list(sd) == report["superdim"]}
    expect = {"superdim": report["superdim"], "simple": report["simple"]}
    return S, report, expect


BUILDERS = {"tensor": build_tensor_kind, "super": build_super_kind,
            "ge3": build_model_kind, "deg2": build_model_kind}


def _write_outputs(cfg, dump, report):
    text = dumps_json(report)
    if cfg.out:
        out = Path(cfg.out)
        if dump is not None:
            out.write_text(dump)
        Path(str(out) + ".report.json").write_text(text)
    sys.stdout.write(text)


def cmd_build(cfg: RunConfig) -> int:
    spec = load_spec(cfg.path)
    kind = spec["kind"]
    if kind not in BUILDERS:
        raise InputError(f"unknown spec kind {kind!r}")
    report_base = {"field": cfg.field.spec.to_json(), "mode": cfg.mode}
    try:
        L, report, expect = BUILDERS[kind](cfg, spec)
    except ConstructionError as exc:
        report = dict(report_base, **exc.report, error=str(exc))
        _write_outputs(cfg, None, report)
        return EXIT_CONSTRUCTION
    dump = L.dumps(extra={"expect": expect})
    report.update(report_base)
    report["dump_sha256"] = sha256_text(dump)
    _write_outputs(cfg, dump, report)
    if report.get("prediction", {}).get("match") is False:
        return EXIT_VERIFY
    return EXIT_OK


# -- verify / report ------------------------------------------------------------------


def _load_dump(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read dump: {exc}") from exc
    try:
        L = LieAlgebra.loads(text)
        header = json.loads(text.splitlines()[0])
    except (LieError, FieldError, ValueError) as exc:
        raise InputError(f"bad dump: {exc}") from exc
    return text, L, header


def cmd_verify(cfg: RunConfig) -> int:
    text, L, header = _load_dump(cfg.path)
    report = {"kind": header.get("kind"), "name": L.name, "dim": L.n, "mode": cfg.mode,
              "dump_sha256": sha256_text(text)}
    ok = True
    rep = _jacobi(cfg, L)
    report["super_jacobi" if L.parity is not None else "jacobi"] = rep.to_json()
    ok &= rep.passed
    wit = grading_witness(L)
    if L.grades is not None:
        report["grading"] = "pass" if wit is None else {"fail": list(wit)}
        ok &= wit is None
    if rep.passed:
        summary = _super_summary(cfg, L) if L.parity is not None else _lie_summary(cfg, L)
        report.update(summary)
        expect = header.get("expect", {})
        mism = {k: {"expected": v, "found": summary.get(k)} for k, v in sorted(expect.items())
                if summary.get(k) != v}
        if mism:
            report["mismatch"] = mism
            ok = False
    if not rep.passed and rep.witness is not None:
        print(f"witness triple: {list(rep.witness)}", file=sys.stderr)
    report["result"] = "pass" if ok else "fail"
    _write_outputs(cfg, None, report)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_report(cfg: RunConfig) -> int:
    text, L, header = _load_dump(cfg.path)
    report = {"kind": header.get("kind"), "name": L.name, "field": header.get("field"), "dim": L.n,
              "nonzero_constants": sum(1 for _ in L._dump_items()), "dump_sha256": sha256_text(text)}
    if L.parity is not None:
        report["superdim"] = list(L.superdim)
    if L.grades is not None:
        g = np.asarray(L.grades)
        report["grade_dims"] = {str(int(d)): int(np.sum(g == d)) for d in np.unique(g)}
    if "expect" in header:
        report["expect"] = header["expect"]
    _write_outputs(cfg, None, report)
    return EXIT_OK


# -- table ----------------------------------------------------------------------------


def _table_row_finite(cfg, F, left, right):
    row = {"shape": f"{left}x{right}"}
    T = build_tensor(_composition(F, left), _composition(F, right))
    if (left, right) != ("Phi", "Phi"):
        t0 = time.perf_counter()
        L = build_graded_lie(T, form="integral")
        row["dim"] = L.n
        row.update(_lie_summary(cfg, L))
        _log(cfg, f"table {row['shape']} lie", t0)
    try:
        t0 = time.perf_counter()
        S = build_super_from_tensor(T, allow_excluded=True, check=False)
        row["superdim"] = list(S.superdim)
        row["super_simple"] = bool(is_simple(S).simple)
        _log(cfg, f"table {row['shape']} super", t0)
    except SemisimplifyError:
        row["superdim"] = None
        row["super_simple"] = False
    return row


def _table_row_rational(cfg, left, right):
    """Dimensions from the integer lattice; the center through a large prime."""
    row = {"shape": f"{left}x{right}"}
    if (left, right) == ("Phi", "Phi"):
        return row
    Fq = GF(REDUCTION_PRIME)
    t0 = time.perf_counter()
    T = build_tensor(_composition(Fq, left), _composition(Fq, right))
    L = build_graded_lie(T, form="integral")
    row["dim"] = L.n
    zq = int(center(L).shape[0])
    row["center_dim"] = 0 if zq == 0 else f"<= {zq}"
    if PUBLISHED_DIMS[(left, right)] == "X":
        # the small excluded shape is decided directly over the rationals
        T = build_tensor(_composition(cfg.field, left), _composition(cfg.field, right))
        row.update(_lie_summary(cfg, build_graded_lie(T, form="integral")))
    _log(cfg, f"table {row['shape']} lattice", t0)
    return row


def _expected_row(char, left, right):
    """Expected cells; E x E only carries its verdicts (not simple, excluded)."""
    key = (left, right)
    exp = {}
    if key != ("Phi", "Phi"):
        exp["dim"] = PUBLISHED_DIMS[key]
        if exp["dim"] != "X":
            exp["center_dim"] = PUBLISHED_CENTERS.get(key, 0) if char == 3 else 0
    if char == 3:
        sd, simple = PUBLISHED_SUPER[key]
        if sd is not None:
            exp["superdim"] = list(sd)
        exp["super_simple"] = simple
    return exp


def _row_matches(row, exp):
    """Keys whose computed value differs from the expected one.

    An ``X`` dimension means the algebra is not simple, even modulo its center.
    """
    bad = []
    for key, want in exp.items():
        if key == "dim" and want == "X":
            if row.get("simple") or row.get("quotient_simple"):
                bad.append(key)
        elif row.get(key) != want:
            bad.append(key)
    return bad


def compute_table(cfg: RunConfig):
    F = cfg.field
    char = F.characteristic
    if char not in (0, 3):
        raise InputError("the table is defined over characteristic 3 fields and the rationals")
    rows = []
    for left, right in TABLE_SHAPES:
        if char == 0:
            row = _table_row_rational(cfg, left, right)
        else:
            row = _table_row_finite(cfg, F, left, right)
        exp = _expected_row(char, left, right)
        row["expected"] = exp
        row["mismatch"] = _row_matches(row, exp)
        rows.append(row)
    provenance = {"dim": DIMS_PROVENANCE}
    if char == 3:
        provenance.update(center_dim=CENTERS_PROVENANCE, superdim=SUPER_PROVENANCE,
                          super_simple=SUPER_PROVENANCE)
    else:
        provenance["center_dim"] = f"characteristic 0; upper bound from GF({REDUCTION_PRIME})"
    return {"field": F.spec.to_json(), "rows": rows, "provenance": provenance,
            "match": not any(r["mismatch"] for r in rows)}


def _fmt(v):
    if v is None:
        return "-"
    if isinstance(v, list):
        return f"({v[0]}|{v[1]})"
    return str(v)


def render_table(table) -> str:
    cols = ["dim", "center_dim", "superdim", "super_simple"]
    head = f"{'shape':<8}" + "".join(f"{c:>24}" for c in cols) + "  ok"
    lines = [head]
    for r in table["rows"]:
        cells = []
        for c in cols:
            if c not in r["expected"]:
                cells.append(f"{'':>24}")
                continue
            cells.append(f"{_fmt(r.get(c)) + ' / ' + _fmt(r['expected'][c]):>24}")
        lines.append(f"{r['shape']:<8}" + "".join(cells) + ("  yes" if not r["mismatch"] else "  NO"))
    lines.append("cells: computed / expected")
    for k, v in sorted(table["provenance"].items()):
        lines.append(f"  {k}: {v}")
    return "\n".join(lines) + "\n"


def cmd_table(cfg: RunConfig) -> int:
    table = compute_table(cfg)
    sys.stdout.write(render_table(table))
    if cfg.out:
        Path(cfg.out).write_text(dumps_json(table))
    return EXIT_OK if table["match"] else EXIT_VERIFY


# -- entry point ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="gf3", help="gf3, gf9, q or a JSON field spec")
    common.add_argument("--mode", choices=["full", "sampled"], default="full")
    common.add_argument("--seed", type=int, default=None, help="required with --mode sampled")
    common.add_argument("--count", type=int, default=1000, help="samples in sampled mode")
    common.add_argument("--out", default=None, help="output path")
    common.add_argument("-v", "--verbose", action="count", default=0, help="timings on stderr")
    p = argparse.ArgumentParser(prog="lsa3", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    b = sub.add_parser("build", parents=[common], help="build an algebra from a JSON spec")
    b.add_argument("spec", help="path to a JSON spec or an inline JSON object")
    b.add_argument("--v-slice", choices=["left", "right"], default=None)
    b.add_argument("--allow-excluded", action="store_true", help="build E x E' anyway")
    sub.add_parser("table", parents=[common], help="recompute the dimension table")
    v = sub.add_parser("verify", parents=[common], help="run the suites on a dump")
    v.add_argument("dump")
    r = sub.add_parser("report", parents=[common], help="summarize a dump")
    r.add_argument("dump")
    return p


COMMANDS = {"build": cmd_build, "table": cmd_table, "verify": cmd_verify, "report": cmd_report}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.mode == "sampled" and args.seed is None:
            raise InputError("--mode sampled needs an explicit --seed")
        if args.count < 1:
            raise InputError("--count must be positive")
        field = make_field(FieldSpec.parse(args.field))
        cfg = RunConfig(command=args.command, path=getattr(args, "spec", None) or getattr(args, "dump", None),
                        field=field, mode=args.mode, seed=args.seed, count=args.count, out=args.out,
                        v_slice=getattr(args, "v_slice", None),
                        allow_excluded=getattr(args, "allow_excluded", False), verbosity=args.verbose)
        return COMMANDS[args.command](cfg)
    except (InputError, FieldError, CompositionError, JTernaryError, StructurableError,
            SemisimplifyError) as exc:
        kind = "input" if isinstance(exc, (InputError, FieldError)) else "spec"
        print(f"lsa3: {kind} error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (LieError, ArithmeticError) as exc:
        print(f"lsa3: construction failed: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION


if __name__ == "__main__":
    sys.exit(main())
