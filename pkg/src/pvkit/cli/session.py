"""Session state and command dispatch."""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field

from ..basechange import extend_constants, galois_commutation_check, split_and_analyze
from ..errors import DomainError, ParseError, UnsupportedError, UsageError
from ..galois import descend, fibre_functor, galois_group
from ..modules import DifferenceModule, fixed_vectors, scalar_rational_solutions
from ..pv import construct_pv, universal_pv, verify_pv
from ..rings import QDilationField, ShiftField, constants_of, simplicity_certificate, total_fractions_check
from ..rsolve import DEFAULT_DEGREE_CAP, rational_solutions
from .parser import Command, Evaluator, build_ring, element_str, module_literal


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


@dataclass
class Report:
    command: str
    line: int
    result: dict
    lines: list
    trace: list = field(default_factory=list)
    timing: float = 0.0

    def to_json(self):
        # timing is left out so that reports are reproducible byte for byte
        return {"command": self.command, "line": self.line, "result": self.result, "trace": self.trace}


def _matrix_str(M):
    return [[element_str(e) for e in row] for row in M]


def _vector_str(v):
    return [element_str(e) for e in v]


def _group_text(G):
    desc = G.describe()
    if G.field.degree > 1:
        return f"Galois group: {desc} over {G.field.name}"
    return f"Galois group: {desc}"


class Session:
    """Declared ring, named modules and equations, PV presentations, options."""

    def __init__(self, seed=0, degree_cap=DEFAULT_DEGREE_CAP):
        self.seed = seed
        self.degree_cap = degree_cap
        self.ring = None
        self.modules = {}
        self.inhomogeneous = {}
        self.presentations = {}

    def rng(self, line):
        # one stream per statement keeps results independent of earlier commands
        return random.Random(self.seed * 1_000_003 + line)

    def run(self, cmd: Command) -> Report:
        start = time.perf_counter()
        handler = getattr(self, f"_do_{cmd.kind}")
        if cmd.kind != "ring" and self.ring is None:
            raise ParseError("no ring declared", cmd.line, 1)
        report = handler(cmd)
        report.timing = time.perf_counter() - start
        return report

    def _report(self, cmd, result, lines, trace=()):
        return Report(cmd.text, cmd.line, result, list(lines), list(trace))

    def _module(self, cmd, idx=0):
        name = cmd.args["names"][idx]
        if name not in self.modules:
            cols = cmd.columns.get("names")
            raise ParseError(f"unknown identifier {name!r}", cmd.line, cols[idx] if cols else None)
        return name, self.modules[name]

    def _define(self, cmd, name):
        if name in self.modules:
            raise ParseError(f"name {name!r} is already defined", cmd.line, cmd.text.index(name) + 1)

    def session_elements(self):
        out = []
        for M in self.modules.values():
            out.extend(e for row in M.A for e in row)
        for b in self.inhomogeneous.values():
            out.append(b)
        return out

    # -- definitions -------------------------------------------------------

    def _do_ring(self, cmd):
        self.ring = build_ring(cmd)
        self.modules.clear()
        self.inhomogeneous.clear()
        self.presentations.clear()
        R = self.ring
        return self._report(cmd, {"ring": R.name}, [f"Ring: {R.name}"])

    def _do_module(self, cmd):
        name = cmd.args["name"]
        self._define(cmd, name)
        B = Evaluator(self.ring, cmd.line, cmd.columns["expr"]).matrix(cmd.args["expr"])
        M = DifferenceModule.from_recurrence(self.ring, B, name)
        self.modules[name] = M
        result = {"name": name, "rank": M.rank, "recurrence": _matrix_str(M.recurrence)}
        trace = [f"basis form: tau(e_j) = sum_i A_ij e_i with A = B^-1 = {_matrix_str(M.A)}"]
        return self._report(cmd, result, [f"Module {name}: rank {M.rank}"], trace)

    def _do_eq(self, cmd):
        name = cmd.args["name"]
        self._define(cmd, name)
        R = self.ring
        Evaluator(R, cmd.line, cmd.columns["lhs"]).shifted_argument(cmd.args["lhs"])
        a, b = Evaluator(R, cmd.line, cmd.columns["rhs"]).linear(cmd.args["rhs"])
        if not R.is_unit(a):
            raise DomainError(f"the coefficient of y(x) must be a unit of {R.name}, got {element_str(a)}")
        M = DifferenceModule.from_recurrence(R, [[a]], name)
        self.modules[name] = M
        if b:
            self.inhomogeneous[name] = b
        result = {"name": name, "rank": 1, "coefficient": element_str(a), "inhomogeneous": element_str(b)}
        trace = [f"basis form: A = 1/a = {element_str(M.A[0][0])}"]
        return self._report(cmd, result, [f"Equation {name}: tau(y) = ({element_str(a)}) y + ({element_str(b)})"], trace)

    # -- commands ----------------------------------------------------------

    def _do_constants(self, cmd):
        C = constants_of(self.ring)
        result = {"constants": C.describe(), "is_field": C.is_field}
        return self._report(cmd, result, [f"Constants: {C.describe()}"], C.trace)

    def _do_solve(self, cmd):
        name, M = self._module(cmd)
        R = self.ring
        b = self.inhomogeneous.get(name)
        if isinstance(R, (ShiftField, QDilationField)):
            if M.rank == 1:
                sol = scalar_rational_solutions(R, M.recurrence[0][0], b, self.degree_cap)
                particular = None if sol.particular is None else element_str(sol.particular[0])
                homogeneous = [element_str(v[0]) for v in sol.homogeneous]
            else:
                sol = rational_solutions(R, M.recurrence, degree_cap=self.degree_cap)
                particular = None
                homogeneous = [_vector_str(v) for v in sol.homogeneous]
            certified, warnings = sol.certified, list(sol.warnings)
        else:
            if b is not None:
                raise UnsupportedError(f"inhomogeneous equations over {R.name} are not supported")
            fv = fixed_vectors(M, self.degree_cap)
            particular = None
            homogeneous = [element_str(v[0]) if M.rank == 1 else _vector_str(v) for v in fv.vectors]
            certified, warnings = fv.certified, list(fv.warnings or [])
        result = {"particular": particular, "homogeneous": homogeneous, "certified": certified, "warnings": warnings}
        return self._report(cmd, result, _solution_lines(result))

    def _do_group(self, cmd):
        name, M = self._module(cmd)
        trace = []
        if not M.is_diagonal():
            split = split_and_analyze(M)
            trace.append(f"split over {split.field.name}: eigenvalues {[str(e) for e in split.eigenvalues]}")
            M = split.module
        G = galois_group(M)
        trace.append(f"relation lattice basis {G.lattice.basis}")
        return self._report(cmd, G.to_json(), [_group_text(G)], trace)

    def _pv_of(self, name, M):
        if name not in self.presentations:
            self.presentations[name] = construct_pv(M)
        return self.presentations[name]

    def _do_pv(self, cmd):
        name, M = self._module(cmd)
        self.presentations.pop(name, None)
        S = self._pv_of(name, M)
        data = S.to_json()
        lines = [f"PV ring of {name}: generators {', '.join(S.names)} over {self.ring.name}"]
        for rel in data["torsion"]:
            lines.append(f"  relation {rel['lambda']}: witness {rel['witness']}")
        return self._report(cmd, data, lines)

    def _do_verify(self, cmd):
        name, M = self._module(cmd)
        S = self._pv_of(name, M)
        rep = verify_pv(S, M, self.degree_cap)
        data = rep.to_json()
        lines = [f"({k}) {v['status']}" for k, v in data.items()]
        trace = [f"({k}) {t}" for k, v in data.items() for t in v["trace"]]
        return self._report(cmd, data, lines, trace)

    def _do_descend(self, cmd):
        name, M = self._module(cmd)
        S = self._pv_of(name, M)
        chi = cmd.args["chi"]
        if len(chi) != len(S.names):
            raise UsageError(f"line {cmd.line}: character of length {len(chi)} for {len(S.names)} generator(s)")
        res = descend(chi, S)
        data = res.to_json()
        rep = fibre_functor(res.module, S)
        trace = [f"fibre of the descended module: characters {rep.characters}, basis {rep.basis}"]
        return self._report(cmd, data, [f"Descended module for chi={list(chi)}: a = {data['scalar']}"], trace)

    def _do_universal(self, cmd):
        mods = [self._module(cmd, i)[1] for i in range(len(cmd.args["names"]))]
        for N in mods:
            if not N.is_diagonal():
                raise DomainError("universal PV rings are computed for diagonal modules only")
        S, checks = universal_pv(mods)
        data = S.to_json()
        data["trivializes"] = dict(zip(cmd.args["names"], checks))
        lines = [f"Universal PV ring: generators {', '.join(S.names)}, {len(data['torsion'])} relation(s)"]
        return self._report(cmd, data, lines)

    def _do_basechange(self, cmd):
        ext = extend_constants(self.ring, cmd.args["field"])
        ok, info = galois_commutation_check(ext, rng=self.rng(cmd.line), elements=self.session_elements())
        data = ext.to_json()
        data["commutes"] = ok
        data["automorphisms"] = info["automorphisms"]
        data["checked"] = info["checked"]
        lines = [
            f"Base change: {data['ring']}, constants {data['constants']}",
            f"Galois action commutes with tau: {'yes' if ok else 'no'} ({info['checked']} checks)",
        ]
        return self._report(cmd, data, lines, constants_of(ext.ring).trace)

    def _do_split(self, cmd):
        name, M = self._module(cmd)
        split = split_and_analyze(M)
        G = galois_group(split.module)
        data = split.to_json()
        data["group"] = G.to_json()
        lines = [
            f"Splitting field: {split.field.name}",
            "Eigenvalues: " + ", ".join(data["eigenvalues"]),
            _group_text(G),
        ]
        return self._report(cmd, data, lines, [f"P = {data['conjugation_matrix']}"])

    def _do_fractions(self, cmd):
        _, rep = total_fractions_check(self.ring, self.rng(cmd.line))
        data = rep.to_json()
        trace = data.pop("trace", [])
        lines = [
            f"Total ring of fractions: {data['total_ring_of_fractions']}",
            f"C_R = {data['C_R']} ({'a field' if data['C_R_is_field'] else 'not a field'}), C_S = {data['C_S']}",
        ]
        return self._report(cmd, data, lines, trace)

    def _do_simple(self, cmd):
        cert = simplicity_certificate(self.ring)
        data = cert.to_json()
        trace = data.pop("trace", [])
        return self._report(cmd, data, [f"Simplicity: {data['verdict']}"], trace)

    def emit_module(self, name):
        """DSL line that re-creates the named module."""
        return module_literal(name, self.modules[name].recurrence)


def _solution_lines(result):
    lines = [f"Particular solution: {result['particular'] if result['particular'] is not None else 'none'}"]
    if result["homogeneous"]:
        lines.append("Homogeneous solutions: " + "; ".join(str(v) for v in result["homogeneous"]))
    else:
        lines.append("Homogeneous solutions: none")
    if not result["certified"]:
        lines.append("warning: " + "; ".join(result["warnings"]))
    return lines


__all__ = ["Report", "Session", "canonical_json"]
