"""Run a parsed script and collect one result record per command."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from ..algebra.field import FieldSpec
from ..algebra.matrix import FreeMatrix
from ..algebra.parse import evaluate
from ..algebra.ring import RingContext
from ..blowup import duality_witness, lift_potential_data
from ..errors import MFError, Unavailable
from ..homotopy import contraction, ext_module, is_homotopy_iso
from ..mf.core import (
    MatFac,
    MFMorphism,
    Potential,
    RingMap,
    base_change,
    cone,
    direct_sum,
    g_plus,
    make_morphism,
    shift,
)
from ..mf.ops import dual, external_tensor, hom_mf, koszul_factorization, tensor
from ..projective import exceptional_collection_table, koszul_KE_check, pn_line_cohomology
from ..singularity import cokernel_module, periodic_resolution_check
from .parser import (
    Command,
    ExprList,
    Int,
    MapStmt,
    MFLiteral,
    MFStmt,
    MorphismStmt,
    Name,
    Paren,
    PotentialStmt,
    RingStmt,
    Script,
    VersionStmt,
    format_statement,
)

RECOVERABLE = (MFError, ValueError, ArithmeticError)


@dataclass(frozen=True)
class RunOptions:
    field: FieldSpec = field(default_factory=FieldSpec.rationals)  # used by rings over ``k``
    order: str = "grevlex"  # used by rings without an explicit order
    seed: int = 0
    timing: bool = False


@dataclass
class ResultRecord:
    index: int
    line: int
    command: str
    op: str
    status: str
    result: dict | None = None
    error: dict | None = None
    wall_ms: float | None = None

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def to_json(self) -> dict:
        out = {"index": self.index, "line": self.line, "command": self.command, "op": self.op,
               "status": self.status}
        if self.ok:
            out["result"] = self.result
        else:
            out["error"] = self.error
        if self.wall_ms is not None:
            out["wall_ms"] = self.wall_ms
        return out


def _object_json(E: MatFac) -> dict:
    out = {"rank1": E.rank1, "rank0": E.rank0}
    out.update(E.to_json())
    return out


class Executor:
    def __init__(self, options: RunOptions | None = None):
        self.options = options or RunOptions()
        self.env: dict[str, object] = {}
        self.failed: dict[str, str] = {}

    # -- environment ---------------------------------------------------------
    def get(self, name: str):
        if name in self.failed:
            raise Unavailable(f"{name!r} is unavailable: {self.failed[name]}")
        return self.env[name]

    def arg(self, a, ring: RingContext | None = None):
        if isinstance(a, Name):
            return self.get(a.name)
        if isinstance(a, Int):
            return a.value
        if isinstance(a, ExprList):
            return [evaluate(e, ring) for e in a.items]
        if isinstance(a, Paren):
            return evaluate(a.expr, ring)
        raise MFError(f"unsupported argument {a!r}")

    def matrix(self, m, ring: RingContext, rows: int | None = None, cols: int | None = None) -> FreeMatrix:
        grid = [[evaluate(e, ring) for e in row] for row in m.rows]
        if not grid or not grid[0]:
            if rows is None:
                return None
            if len(grid) not in (0, rows):
                raise MFError(f"expected {rows} rows, got {len(grid)}")
            return FreeMatrix(ring, rows, cols)
        return FreeMatrix.from_rows(ring, grid)

    # -- declarations --------------------------------------------------------
    def ring(self, stmt: RingStmt) -> RingContext:
        opts = self.options
        if stmt.base is not None:
            base = self.get(stmt.base)
            ring = base.quotient(*[evaluate(g, base) for g in stmt.ideal])
            return ring.with_order(stmt.order) if stmt.order else ring
        if stmt.field == "QQ":
            fld = FieldSpec.rationals()
        elif stmt.field == "k":
            fld = opts.field
        else:
            fld = FieldSpec.prime(int(stmt.field[3:-1]))
        ring = RingContext(fld, stmt.variables, stmt.order or opts.order)
        if stmt.ideal:
            ring = ring.quotient(*[evaluate(g, ring) for g in stmt.ideal])
        return ring

    def mf(self, stmt: MFStmt) -> MatFac:
        form = stmt.form
        if isinstance(form, MFLiteral):
            pot = self.get(form.potential.name)
            e1 = self.matrix(form.e1, pot.ctx)
            e0 = self.matrix(form.e0, pot.ctx)
            if e1 is None and e0 is None:
                e1 = e0 = FreeMatrix(pot.ctx, 0, 0)
            elif e1 is None:
                e1 = FreeMatrix(pot.ctx, e0.cols, e0.rows)
            elif e0 is None:
                e0 = FreeMatrix(pot.ctx, e1.cols, e1.rows)
            # unvalidated on purpose: ``check`` reports the failure
            return MatFac(pot, e1, e0, validate=False)
        f, args = form.func, form.args
        if f == "koszul":
            pot = self.get(args[0].name)
            return koszul_factorization(self.arg(args[1], pot.ctx), self.arg(args[2], pot.ctx), pot.ctx)
        if f == "gplus":
            pot = self.get(args[2].name)
            return g_plus(args[0].value, args[1].value, pot)
        vals = [self.arg(a) for a in args]
        if f == "shift":
            return shift(vals[0])
        if f == "dual":
            return dual(vals[0])
        if f == "tensor":
            return tensor(*vals)
        if f == "hom":
            return hom_mf(*vals)
        if f == "sum":
            return direct_sum(*vals)
        if f == "external":
            return external_tensor(*vals)[0]
        if f == "cone":
            return cone(vals[0])
        return base_change(vals[0], vals[1])

    def morphism(self, stmt: MorphismStmt) -> MFMorphism:
        src, tgt = self.get(stmt.source.name), self.get(stmt.target.name)
        ctx = src.ctx
        comps = {}
        for key, m in stmt.components:
            comps[key] = self.matrix(m, ctx)
        return make_morphism(src, tgt, stmt.degree, **comps)

    def ring_map(self, stmt: MapStmt) -> RingMap:
        src, tgt = self.get(stmt.source.name), self.get(stmt.target.name)
        return RingMap.from_dict(src, tgt, {v: evaluate(e, tgt) for v, e in stmt.assignments})

    # -- commands ------------------------------------------------------------
    def command(self, cmd: Command) -> dict:
        name, args = cmd.name, cmd.args
        if name == "check":
            X = self.arg(args[0])
            if isinstance(X, MFMorphism):
                return {"kind": "morphism", "degree": X.degree, "closed": X.is_closed()}
            X.check()
            return {"kind": "mf", "valid": True, **_object_json(X)}
        if name == "ext":
            P, Q = self.arg(args[0]), self.arg(args[1])
            return ext_module(P, Q, args[2].value).to_json()
        if name == "contractible":
            E = self.arg(args[0])
            h = contraction(E)
            return {"contractible": h is not None, "witness": h.to_json() if h is not None else None}
        if name == "homotopy_iso":
            return {"homotopy_iso": is_homotopy_iso(self.arg(args[0]))}
        if name == "dual":
            return _object_json(dual(self.arg(args[0])))
        if name == "tensor":
            return _object_json(tensor(self.arg(args[0]), self.arg(args[1])))
        if name == "hom":
            return _object_json(hom_mf(self.arg(args[0]), self.arg(args[1])))
        if name == "koszul":
            pot = self.arg(args[0])
            a, b = self.arg(args[1], pot.ctx), self.arg(args[2], pot.ctx)
            return _object_json(koszul_factorization(a, b, pot.ctx))
        if name == "cok":
            return cokernel_module(self.arg(args[0])).to_json()
        if name == "periodic_check":
            steps = args[1].value if len(args) > 1 else 3
            return periodic_resolution_check(self.arg(args[0]), steps).to_json()
        if name == "pncoh":
            return pn_line_cohomology(args[0].value, args[1].value).to_json()
        if name == "exc_table":
            start = args[1].value if len(args) > 1 else None
            return exceptional_collection_table(args[0].value, start).to_json()
        if name == "koszul_ke":
            return koszul_KE_check(args[0].value, seed=self.options.seed,
                                   field=self.options.field).to_json()
        if name == "blowup_verify":
            M = self.arg(args[0])
            A = M.ctx.ambient
            f = self.arg(args[1], A)
            W = self.arg(args[2], A)
            if isinstance(W, Potential):
                W = A(W.W)
            model = lift_potential_data(M, f, W)
            out = {"f": str(f), "W": str(W), "u0": model.u0.to_lists(), "u1": model.u1.to_lists()}
            out.update(duality_witness(model).to_json())
            return out
        raise MFError(f"unknown command {name!r}")

    # -- driver --------------------------------------------------------------
    def declare(self, stmt):
        if isinstance(stmt, RingStmt):
            value = self.ring(stmt)
        elif isinstance(stmt, PotentialStmt):
            ring = self.get(stmt.ring.name)
            value = Potential(ring, evaluate(stmt.expr, ring))
        elif isinstance(stmt, MFStmt):
            value = self.mf(stmt)
        elif isinstance(stmt, MorphismStmt):
            value = self.morphism(stmt)
        else:
            value = self.ring_map(stmt)
        self.env[stmt.name] = value

    def run(self, script: Script) -> list[ResultRecord]:
        records = []
        for index, stmt in enumerate(script.statements):
            if isinstance(stmt, VersionStmt):
                continue
            is_cmd = isinstance(stmt, Command)
            op = stmt.name if is_cmd else "declare"
            t0 = time.perf_counter()
            try:
                result = self.command(stmt) if is_cmd else self.declare(stmt)
                error = None
            except RECOVERABLE as exc:
                result = None
                error = {"type": type(exc).__name__, "message": str(exc)}
                if not is_cmd:
                    self.failed[stmt.name] = error["message"]
            wall = round((time.perf_counter() - t0) * 1000, 3) if self.options.timing else None
            if is_cmd or error is not None:
                records.append(ResultRecord(
                    index, stmt.line, format_statement(stmt), op,
                    "ok" if error is None else "error", result, error, wall,
                ))
        return records


def execute(script: Script, options: RunOptions | None = None) -> list[ResultRecord]:
    return Executor(options).run(script)
