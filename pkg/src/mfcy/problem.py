"""JSON problem files, task dispatch and result records.

A problem file looks like::

    {
      "vars": ["z"],
      "superpotential": "z^3",
      "omega": "1",
      "objects": {"D": {"D12": [["z"]], "D21": [["z^2"]]}},
      "morphisms": {"phi": {"source": "D", "target": "D", "parity": 1,
                            "blocks": {"12": [["-1"]], "21": [["z"]]}}},
      "chains": {"c": ["phi"]},
      "tasks": [{"id": "kl", "command": "theta_kl", "args": {"morphism": "phi"}}]
    }

Objects may instead be given as ``{"koszul": [["u1", "v1"], ...]}``.  Chain
entries are listed in written order, ``Phi_l`` first, either by name or inline.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import cy
from .hochschild import OPERATORS, Chain, ChainSum
from .mfcat import (
    MatrixFactorization,
    Morphism,
    NotAFactorizationError,
    ObjectMismatchError,
    Superpotential,
    koszul_factorization,
    make_factorization,
)
from .polyring import Poly, PolyParseError, format_poly, format_scalar, parse_poly, parse_scalar
from .residue import ResidueQuery, residue_local, residue_total


class ProblemError(ValueError):
    """A problem file that parses but violates an invariant (exit code 1)."""


class ProblemParseError(ValueError):
    """Malformed JSON or polynomial text (exit code 2)."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
        self.column = column


def _locate(raw: str, text: str, column: int) -> tuple[int | None, int | None]:
    """Line/column in ``raw`` of ``column`` inside the first occurrence of the JSON string ``text``."""
    needle = json.dumps(text, ensure_ascii=False)
    at = raw.find(needle)
    if at < 0:
        return None, None
    pos = at + 1 + column - 1
    line = raw.count("\n", 0, pos) + 1
    col = pos - (raw.rfind("\n", 0, pos) + 1) + 1
    return line, col


@dataclass
class Problem:
    names: list
    potential: Superpotential
    omega: Poly
    objects: dict = field(default_factory=dict)
    morphisms: dict = field(default_factory=dict)
    chains: dict = field(default_factory=dict)
    tasks: list = field(default_factory=list)
    raw: str = ""

    @property
    def nvars(self) -> int:
        return len(self.names)

    def object_name(self, d: MatrixFactorization) -> str:
        for name, obj in self.objects.items():
            if obj == d:
                return name
        return d.name or "?"


class _Loader:
    def __init__(self, raw: str, names: list):
        self.raw = raw
        self.names = names

    def poly(self, text, where: str) -> Poly:
        if isinstance(text, (int, float)) and not isinstance(text, bool):
            if isinstance(text, float) and not text.is_integer():
                raise ProblemParseError(f"{where}: write non-integers as exact rationals, got {text}")
            text = str(int(text))
        if not isinstance(text, str):
            raise ProblemParseError(f"{where}: expected a polynomial string, got {text!r}")
        try:
            return parse_poly(text, self.names)
        except PolyParseError as err:
            line, col = _locate(self.raw, text, err.column)
            raise ProblemParseError(f"{where}: {err}", line, col) from None

    def matrix(self, rows, where: str) -> tuple:
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise ProblemError(f"{where}: expected a list of rows")
        return tuple(tuple(self.poly(x, f"{where}[{a}][{b}]") for b, x in enumerate(row))
                     for a, row in enumerate(rows))


def _require(d: dict, key: str, where: str):
    if not isinstance(d, dict) or key not in d:
        raise ProblemError(f"{where}: missing field {key!r}")
    return d[key]


def _parity(value, where: str) -> int:
    if value in (0, 1):
        return int(value)
    if value in ("even", "odd"):
        return int(value == "odd")
    raise ProblemError(f"{where}: parity must be 0, 1, 'even' or 'odd'")


def load_problem(raw: str) -> Problem:
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as err:
        raise ProblemParseError(err.msg, err.lineno, err.colno) from None
    if not isinstance(data, dict):
        raise ProblemError("problem file must be a JSON object")
    names = data.get("vars")
    if names is None:
        raise ProblemError("missing field 'vars'")
    if not isinstance(names, list) or not names or not all(isinstance(x, str) for x in names):
        raise ProblemError("'vars' must be a nonempty list of names")
    ld = _Loader(raw, names)
    f = ld.poly(_require(data, "superpotential", "problem"), "superpotential")
    potential = Superpotential(f)
    omega = ld.poly(data.get("omega", "1"), "omega")
    try:
        cy.as_volume_form(omega, len(names), potential)
    except cy.VolumeFormError as err:
        raise ProblemError(f"omega: {err}") from None
    prob = Problem(names, potential, omega, raw=raw)

    for name, spec in (data.get("objects") or {}).items():
        where = f"objects.{name}"
        try:
            if isinstance(spec, dict) and "koszul" in spec:
                pairs = [(ld.poly(u, f"{where}.koszul[{a}][0]"), ld.poly(v, f"{where}.koszul[{a}][1]"))
                         for a, (u, v) in enumerate(spec["koszul"])]
                prob.objects[name] = koszul_factorization(potential, pairs, name=name)
            else:
                d12 = ld.matrix(_require(spec, "D12", where), f"{where}.D12")
                d21 = ld.matrix(_require(spec, "D21", where), f"{where}.D21")
                prob.objects[name] = make_factorization(potential, d12, d21, name=name)
        except NotAFactorizationError as err:
            raise ProblemError(f"{where}: {err}") from None

    for name, spec in (data.get("morphisms") or {}).items():
        prob.morphisms[name] = _load_morphism(prob, ld, spec, f"morphisms.{name}")

    for name, entries in (data.get("chains") or {}).items():
        prob.chains[name] = _load_chain(prob, ld, entries, f"chains.{name}")
    if "chain" in data:
        prob.chains.setdefault("chain", _load_chain(prob, ld, data["chain"], "chain"))

    tasks = data.get("tasks") or []
    if not isinstance(tasks, list):
        raise ProblemError("'tasks' must be a list")
    for a, t in enumerate(tasks):
        if not isinstance(t, dict) or "command" not in t:
            raise ProblemError(f"tasks[{a}]: missing field 'command'")
        if t["command"] not in COMMANDS:
            raise ProblemError(f"tasks[{a}]: unknown command {t['command']!r}")
    prob.tasks = tasks
    return prob


def _object(prob: Problem, name, where: str) -> MatrixFactorization:
    if name not in prob.objects:
        raise ProblemError(f"{where}: unknown object {name!r}")
    return prob.objects[name]


def _load_morphism(prob: Problem, ld: _Loader, spec, where: str) -> Morphism:
    src = _object(prob, _require(spec, "source", where), where)
    tgt = _object(prob, _require(spec, "target", where), where)
    parity = _parity(_require(spec, "parity", where), where)
    blocks = _require(spec, "blocks", where)
    keys = ("11", "22") if parity == 0 else ("12", "21")
    if set(blocks) != set(keys):
        raise ProblemError(f"{where}: a {'even' if parity == 0 else 'odd'} morphism needs blocks {list(keys)}")
    x = ld.matrix(blocks[keys[0]], f"{where}.blocks.{keys[0]}")
    y = ld.matrix(blocks[keys[1]], f"{where}.blocks.{keys[1]}")
    try:
        return Morphism(src, tgt, parity, x, y)
    except ValueError as err:
        raise ProblemError(f"{where}: {err}") from None


def _load_chain(prob: Problem, ld: _Loader, entries, where: str) -> Chain:
    if not isinstance(entries, list) or not entries:
        raise ProblemError(f"{where}: a chain is a nonempty list of morphisms")
    phis = []
    for a, e in enumerate(entries):
        if isinstance(e, str):
            if e not in prob.morphisms:
                raise ProblemError(f"{where}[{a}]: unknown morphism {e!r}")
            phis.append(prob.morphisms[e])
        else:
            phis.append(_load_morphism(prob, ld, e, f"{where}[{a}]"))
    try:
        return Chain(tuple(phis))
    except ObjectMismatchError as err:
        raise ProblemError(f"{where}: {err}") from None


# -- serialization -----------------------------------------------------------

def rational(x: Fraction) -> str:
    return format_scalar(Fraction(x))


def _matrix_json(m, names) -> list:
    return [[format_poly(p, names) for p in row] for row in m]


def morphism_json(prob: Problem, m: Morphism) -> dict:
    keys = ("11", "22") if m.parity == 0 else ("12", "21")
    return {"source": prob.object_name(m.source), "target": prob.object_name(m.target), "parity": m.parity,
            "blocks": {keys[0]: _matrix_json(m.x, prob.names), keys[1]: _matrix_json(m.y, prob.names)}}


def chain_sum_json(prob: Problem, cs: ChainSum) -> list:
    out = []
    for chain, coeff in cs:
        out.append({"coeff": rational(coeff), "entries": [morphism_json(prob, e) for e in chain.entries]})
    return out


def dump_problem(prob: Problem) -> dict:
    """The problem with every object spelled out; loading this gives back an equal problem."""
    names = prob.names
    out: dict = {"vars": list(names), "superpotential": format_poly(prob.potential.f, names),
                 "omega": format_poly(prob.omega, names)}
    out["objects"] = {k: {"D12": _matrix_json(d.d12, names), "D21": _matrix_json(d.d21, names)}
                      for k, d in prob.objects.items()}
    out["morphisms"] = {k: morphism_json(prob, m) for k, m in prob.morphisms.items()}
    out["chains"] = {k: [morphism_json(prob, e) for e in c.entries] for k, c in prob.chains.items()}
    out["tasks"] = prob.tasks
    return out


def emit(records, fmt: str = "json") -> str:
    """Render records (or a single mapping); JSON keeps insertion order."""
    if fmt == "json":
        return json.dumps(records, indent=2, ensure_ascii=False)
    if fmt == "text":
        if isinstance(records, dict):
            return "\n".join(f"{k}: {_text(v)}" for k, v in records.items())
        lines = []
        for r in records:
            label = r.get("id", r.get("check", ""))
            lines.append(f"{label}\t{r.get('command', '')}\t{_text(r.get('value', r.get('passed')))}".rstrip("\t"))
        return "\n".join(lines)
    raise ValueError(f"unknown format {fmt!r}")


def _text(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, ensure_ascii=False)
    return str(v)


# -- tasks -------------------------------------------------------------------

@dataclass
class Settings:
    mode: str = "total"
    point: tuple | None = None
    budget: int | None = cy.DEFAULT_BUDGET
    threads: int = 1
    seed: int = 7
    timing: bool = False


def parse_point(text: str | list | None):
    if text is None:
        return None
    parts = text if isinstance(text, list) else str(text).split(",")
    try:
        return tuple(parse_scalar(str(p)) for p in parts)
    except ValueError as err:
        raise ProblemParseError(f"point: {err}") from None


def _mode(args: dict, st: Settings) -> tuple[str, tuple | None]:
    mode = args.get("mode", st.mode)
    point = parse_point(args["point"]) if "point" in args else st.point
    if mode not in ("total", "point"):
        raise ProblemError(f"mode must be 'total' or 'point', got {mode!r}")
    if mode == "point" and point is None:
        raise ProblemError("point mode needs a point")
    return mode, point


def _morphism_arg(prob: Problem, args: dict, key: str) -> Morphism:
    name = _require(args, key, "args")
    if name not in prob.morphisms:
        raise ProblemError(f"unknown morphism {name!r}")
    return prob.morphisms[name]


def _chain_arg(prob: Problem, args: dict) -> Chain:
    name = args.get("chain", "chain")
    if name not in prob.chains:
        raise ProblemError(f"unknown chain {name!r}")
    return prob.chains[name]


def _task_residue(prob, args, st):
    ld = _Loader(prob.raw, prob.names)
    num = ld.poly(_require(args, "numerator", "args"), "args.numerator")
    dens = []
    for a, d in enumerate(_require(args, "denominators", "args")):
        g, s = (d, 1) if isinstance(d, str) else (d[0], d[1])
        dens.append((ld.poly(g, f"args.denominators[{a}]"), int(s)))
    mode, point = _mode(args, st)
    try:
        if mode == "total":
            value = residue_total(ResidueQuery(num, tuple(dens)))
            backend = "transformation law"
        else:
            value = residue_local(ResidueQuery(num, tuple(dens), point))
            backend = "local"
    except ValueError as err:
        raise ProblemError(str(err)) from None
    return rational(value), {"mode": mode, "backend": backend}


def _task_mf_check(prob, args, st):
    d = _object(prob, _require(args, "object", "args"), "args")
    return "valid", {"rank": d.k}


def _task_theta_kl(prob, args, st):
    mode, point = _mode(args, st)
    return rational(cy.theta_kl(_morphism_arg(prob, args, "morphism"), prob.omega, mode, point)), {"mode": mode}


def _task_theta_tilde(prob, args, st):
    mode, point = _mode(args, st)
    v = cy.theta_tilde(_morphism_arg(prob, args, "psi2"), _morphism_arg(prob, args, "psi1"), prob.omega, mode, point)
    return rational(v), {"mode": mode}


def _task_theta(prob, args, st):
    mode, point = _mode(args, st)
    res = cy.evaluate_theta(_chain_arg(prob, args), prob.omega, mode, point, st.budget, st.threads)
    return rational(res.value), {"mode": mode, "term_count": res.term_count, "residue_calls": res.residue_calls}


def _task_chain_apply(prob, args, st):
    op = _require(args, "op", "args")
    if op not in OPERATORS:
        raise ProblemError(f"unknown operator {op!r}; expected one of {sorted(OPERATORS)}")
    out = ChainSum.of(_chain_arg(prob, args)).apply(OPERATORS[op])
    return chain_sum_json(prob, out), {"op": op, "chains": len(out)}


def _task_pairing(prob, args, st):
    v = cy.pairing(_morphism_arg(prob, args, "a2"), _morphism_arg(prob, args, "a1"), prob.omega)
    return rational(v), {}


def _task_gram(prob, args, st):
    left = [_morphism_arg(prob, {"m": n}, "m") for n in _require(args, "basis_a", "args")]
    right = [_morphism_arg(prob, {"m": n}, "m") for n in _require(args, "basis_b", "args")]
    g = cy.gram_matrix(left, right, prob.omega)
    r = cy.gram_rank(g) if g and g[0] else 0
    return [[rational(x) for x in row] for row in g], {"rank": r, "square": len(left) == len(right),
                                                     "full_rank": len(left) == len(right) == r}


def _task_is_coboundary(prob, args, st):
    phi = _morphism_arg(prob, args, "morphism")
    bound = int(_require(args, "bound", "args"))
    res = cy.is_coboundary(phi, bound)
    diag = {"bound": bound}
    if res.witness is not None:
        diag["witness"] = morphism_json(prob, res.witness)
    return res.is_coboundary, diag


def _task_cocycle_basis(prob, args, st):
    src = _object(prob, _require(args, "source", "args"), "args")
    tgt = _object(prob, _require(args, "target", "args"), "args")
    parity = _parity(_require(args, "parity", "args"), "args")
    basis = cy.cocycle_basis(src, tgt, parity, int(_require(args, "bound", "args")))
    return [morphism_json(prob, m) for m in basis], {"size": len(basis)}


COMMANDS = {
    "residue": _task_residue,
    "mf_check": _task_mf_check,
    "theta_kl": _task_theta_kl,
    "theta_tilde": _task_theta_tilde,
    "theta": _task_theta,
    "chain_apply": _task_chain_apply,
    "pairing": _task_pairing,
    "gram": _task_gram,
    "is_coboundary": _task_is_coboundary,
    "cocycle_basis": _task_cocycle_basis,
}


def run_task(prob: Problem, task: dict, st: Settings, index: int = 0) -> dict:
    args = task.get("args") or {}
    t0 = time.perf_counter()
    try:
        value, diag = COMMANDS[task["command"]](prob, args, st)
    except (NotAFactorizationError, ObjectMismatchError, cy.NotACocycleError, cy.VolumeFormError) as err:
        raise ProblemError(f"task {task.get('id', index)}: {err}") from None
    if st.timing:
        diag["elapsed"] = round(time.perf_counter() - t0, 6)
    return {"id": str(task.get("id", index)), "command": task["command"], "value": value, "diagnostics": diag}


def run(prob: Problem, st: Settings | None = None) -> list[dict]:
    st = st or Settings()
    return [run_task(prob, t, st, a) for a, t in enumerate(prob.tasks)]
