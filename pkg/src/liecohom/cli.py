"""
Command-line front end.

    liecohom validate ring.json
    liecohom info ring.json
    liecohom h2 ring.json --coeff 2,4
    liecohom classify ring.json --coeff 2
    liecohom five-term ring.json --ideal center --coeff 2
    liecohom schur ring.json
    liecohom cocycle-check cocycle.json

Ring files are JSON: ``{"format": 1, "orders": [2, 2, 2], "bracket": {"1,2": [0, 0, 1]}}``
with 1-based generator indices.  Exit status is 0 on success, 1 on a
mathematical or input-document error, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .abgroup import AbGroupError, FinAbGroup, Subgroup
from .cohomology import Cocycle, CohomologyError, ResourceLimitError, h2, is_cocycle, order_limit
from .extensions import ExtensionError, classify_extensions
from .fiveterm import FiveTermError, check_five_term
from .liering import LieIdeal, LieRing, LieRingError, center, derived, lie_new
from .schur import schur_multiplier

FORMAT = 1


class DocumentError(ValueError):
    pass


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- documents

@dataclass
class LieRingDocument:
    orders: list
    bracket: dict = field(default_factory=dict)    # (i, j) 1-based -> coefficient list

    def to_ring(self) -> LieRing:
        return lie_new(self.orders, {(i - 1, j - 1): v for (i, j), v in self.bracket.items()})

    def to_json(self) -> dict:
        return {"format": FORMAT, "orders": list(self.orders),
                "bracket": {f"{i},{j}": list(v) for (i, j), v in sorted(self.bracket.items())}}

    @classmethod
    def from_ring(cls, L: LieRing) -> LieRingDocument:
        return cls(list(L.moduli), {(i + 1, j + 1): list(v) for (i, j), v in sorted(L.sc.items())})


def _loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"syntax error at line {e.lineno}, column {e.colno}: {e.msg}") from None


def _is_int(x):
    return isinstance(x, int) and not isinstance(x, bool)


def _check_format(obj, require_format):
    if "format" in obj:
        if obj["format"] != FORMAT:
            raise DocumentError(f"unsupported format {obj['format']!r} (expected {FORMAT})")
    elif require_format:
        raise DocumentError('missing "format" field')


def document_from_obj(obj, require_format: bool = False) -> LieRingDocument:
    if not isinstance(obj, dict):
        raise DocumentError("a Lie ring document must be a JSON object")
    unknown = set(obj) - {"format", "orders", "bracket"}
    if unknown:
        raise DocumentError(f"unknown keys: {', '.join(sorted(unknown))}")
    _check_format(obj, require_format)
    orders = obj.get("orders")
    if not isinstance(orders, list) or not all(_is_int(d) and d >= 1 for d in orders):
        raise DocumentError('"orders" must be a list of integers >= 1')
    n = len(orders)
    br = obj.get("bracket", {})
    if not isinstance(br, dict):
        raise DocumentError('"bracket" must be an object')
    out = {}
    for key, v in br.items():
        parts = key.split(",")
        try:
            i, j = (int(p) for p in parts)
        except ValueError:
            raise DocumentError(f'bracket key {key!r}: expected "i,j"') from None
        if not (1 <= i < j <= n):
            raise DocumentError(f"bracket key {key!r}: index out of range (need 1 <= i < j <= {n})")
        if not isinstance(v, list) or not all(_is_int(c) for c in v):
            raise DocumentError(f"bracket {key!r}: value must be a list of integers")
        if len(v) != n:
            raise DocumentError(f"bracket {key!r}: coefficient vector has length {len(v)}, expected {n}")
        out[(i, j)] = v
    return LieRingDocument(list(orders), out)


def parse_liering(text: str, require_format: bool = False) -> LieRingDocument:
    """Parse and validate a Lie ring document; ``document.to_ring()`` builds the ring."""
    return document_from_obj(_loads(text), require_format)


def _read(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def cocycle_to_json(c: Cocycle) -> dict:
    return {"format": FORMAT, "lie": LieRingDocument.from_ring(c.L).to_json(),
            "coeff": list(c.A.moduli), "f": c.f.tolist(), "g": c.g.tolist()}


def parse_cocycle(text: str, base: Path | None = None) -> Cocycle:
    obj = _loads(text)
    if not isinstance(obj, dict):
        raise DocumentError("a cocycle document must be a JSON object")
    unknown = set(obj) - {"format", "lie", "coeff", "f", "g"}
    if unknown:
        raise DocumentError(f"unknown keys: {', '.join(sorted(unknown))}")
    _check_format(obj, True)
    lie = obj.get("lie")
    if isinstance(lie, str):
        p = Path(lie) if base is None else base / lie
        lie = _loads(_read(p))
    L = document_from_obj(lie, require_format=False).to_ring()
    coeff = obj.get("coeff")
    if not isinstance(coeff, list) or not all(_is_int(d) and d >= 1 for d in coeff):
        raise DocumentError('"coeff" must be a list of integers >= 1')
    A = FinAbGroup(coeff)
    N, r = L.order, A.rank
    tables = []
    for name in ("f", "g"):
        try:
            t = np.array(obj.get(name), dtype=np.int64)
        except (TypeError, ValueError, OverflowError):
            raise DocumentError(f'"{name}" must be a nested array of integers') from None
        if t.shape != (N, N, r):
            raise DocumentError(f'"{name}" has shape {t.shape}, expected {(N, N, r)}')
        tables.append(t)
    return Cocycle(L, A, *tables)


# ---------------------------------------------------------------- commands

def _group_str(moduli) -> str:
    return " + ".join(f"Z/{d}" for d in moduli) if moduli else "0"


def _coeff(text: str) -> FinAbGroup:
    try:
        moduli = [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"--coeff expects comma-separated moduli, got {text!r}") from None
    if not moduli or any(m < 1 for m in moduli):
        raise UsageError(f"--coeff expects moduli >= 1, got {text!r}")
    return FinAbGroup(moduli)


def _ideal(L: LieRing, text: str) -> LieIdeal:
    if text == "center":
        return center(L)
    gens = []
    for part in text.split(";"):
        try:
            v = [int(x) for x in part.split(",")]
        except ValueError:
            raise UsageError(f"--ideal expects 'center' or vectors like '0,0,1;1,0,0', got {text!r}") from None
        if len(v) != L.rank:
            raise UsageError(f"--ideal vector {part!r} has length {len(v)}, expected {L.rank}")
        gens.append(v)
    I = LieIdeal(L, Subgroup(L.additive, gens))
    if not I.central:
        raise FiveTermError("the given ideal is not central")
    return I


def cmd_validate(L, args):
    Z = center(L)
    text = f"valid Lie ring, order {L.order}, center order {Z.order}"
    return {"valid": True, "order": L.order, "center_order": Z.order}, text


def cmd_info(L, args):
    Z, D = center(L), derived(L)
    res = {
        "orders": list(L.moduli),
        "invariant_factors": list(L.additive.invariant_factors()),
        "order": L.order,
        "abelian": L.is_abelian(),
        "center": {"order": Z.order, "structure": list(Z.subgroup.structure()),
                   "basis": [list(b) for b in Z.subgroup.basis]},
        "derived": {"order": D.order, "structure": list(D.subgroup.structure()),
                    "basis": [list(b) for b in D.subgroup.basis]},
    }
    lines = [f"order {L.order}, additive group {_group_str(res['invariant_factors'])}",
             "abelian" if res["abelian"] else "non-abelian",
             f"center: order {Z.order}, {_group_str(res['center']['structure'])}",
             f"derived subring: order {D.order}, {_group_str(res['derived']['structure'])}"]
    return res, "\n".join(lines)


def cmd_h2(L, args):
    A = _coeff(args.coeff)
    H = h2(L, A)
    res = {"coeff": list(A.moduli), "h2": list(H.group.moduli), "order": H.order,
           "z2_order": H.z2_order, "b2_order": H.b2_order,
           "representatives": [{"f": r.f.tolist(), "g": r.g.tolist()} for r in H.reps]}
    text = f"H2 = {_group_str(H.group.moduli)}\n|Z2| = {H.z2_order}, |B2| = {H.b2_order}"
    return res, text


def cmd_classify(L, args):
    A = _coeff(args.coeff)
    classes = classify_extensions(L, A)
    res = {"coeff": list(A.moduli), "count": len(classes),
           "classes": [{"class": list(e.cls), "additive": list(e.invariants), "split": e.split}
                       for e in classes]}
    lines = [f"{len(classes)} classes of central extensions"]
    for e in classes:
        lines.append(f"  class {list(e.cls)}: B = {_group_str(e.invariants)}" + ("  (split)" if e.split else ""))
    return res, "\n".join(lines)


def cmd_five_term(L, args):
    A = _coeff(args.coeff)
    H = _ideal(L, args.ideal)
    rep = check_five_term(L, H, A)
    res = rep.to_dict()
    res["coeff"] = list(A.moduli)
    lines = [f"ideal of order {H.order}"]
    for k, v in res["groups"].items():
        lines.append(f"  {k}: {_group_str(v)}")
    for k, v in res["verdicts"].items():
        lines.append(f"{k}: {v}")
    return res, "\n".join(lines)


def cmd_schur(L, args):
    r = schur_multiplier(L)
    res = {"multiplier": list(r.group.moduli), "schedule": r.schedule, "stable": r.stable,
           "by_modulus": {str(N): list(v) for N, v in r.by_modulus.items()}}
    text = f"M(L) = {_group_str(r.group.moduli)}\nstable over N = {', '.join(map(str, r.schedule))}: {r.stable}"
    return res, text


def cmd_cocycle_check(c: Cocycle, args):
    chk = is_cocycle(c)
    res = {"cocycle": chk.ok, "condition": chk.condition,
           "witness": list(chk.witness) if chk.witness is not None else None}
    if chk.ok:
        return res, "cocycle"
    return res, f"not a cocycle: condition ({chk.condition}) fails at {tuple(chk.witness)}"


COMMANDS = {
    "validate": cmd_validate,
    "info": cmd_info,
    "h2": cmd_h2,
    "classify": cmd_classify,
    "five-term": cmd_five_term,
    "schur": cmd_schur,
    "cocycle-check": cmd_cocycle_check,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="liecohom", description="Cohomology of finite Lie rings.")
    p.add_argument("--version", action="version", version=f"liecohom {__version__}")
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--max-order", type=int, default=None,
                        help="largest |L| the cohomology engine accepts (default 32 or $LIECOHOM_MAX_ORDER)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("validate", "info", "schur"):
        sub.add_parser(name, parents=[common]).add_argument("file")
    for name in ("h2", "classify"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("file")
        s.add_argument("--coeff", required=True, help="comma-separated moduli of A, e.g. 2,4")
    s = sub.add_parser("five-term", parents=[common])
    s.add_argument("file")
    s.add_argument("--ideal", required=True, help="'center' or generator vectors '0,0,1;...'")
    s.add_argument("--coeff", required=True)
    sub.add_parser("cocycle-check", parents=[common]).add_argument("file")
    return p


def run_command(argv) -> tuple[int, str, str]:
    """Run one command; returns ``(exit code, stdout text, stderr text)``."""
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        return 2, "", f"usage error: {e}\n"
    except SystemExit as e:   # --help / --version
        return int(e.code or 0), "", ""
    try:
        text = _read(args.file)
        if args.command == "cocycle-check":
            subject = parse_cocycle(text, Path(args.file).parent)
        else:
            subject = parse_liering(text, require_format=True).to_ring()
        with order_limit(args.max_order):
            res, human = COMMANDS[args.command](subject, args)
    except UsageError as e:
        return 2, "", f"usage error: {e}\n"
    except (DocumentError, LieRingError, AbGroupError, CohomologyError, ExtensionError,
            FiveTermError, ResourceLimitError) as e:
        return 1, "", f"error: {e}\n"
    code = 0
    if args.command == "cocycle-check" and not res["cocycle"]:
        code = 1
    if args.json:
        report = {
            "format": FORMAT,
            "command": args.command,
            "arguments": {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "json", "file")},
            "input_sha256": hashlib.sha256(text.encode("utf-8")).hexdigest(),
            "result": res,
            "version": __version__,
            "seed": "none: computations are deterministic",
        }
        out = json.dumps(report, sort_keys=True, indent=2) + "\n"
    else:
        out = human + "\n"
    return code, out, ""


def main(argv=None) -> int:
    code, out, err = run_command(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
