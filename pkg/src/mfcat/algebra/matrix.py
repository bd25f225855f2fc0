"""Dense matrices of polynomials: maps between finite free modules."""

from __future__ import annotations

from ..errors import MFError, RingMismatch
from .ring import Poly, RingContext


class FreeMatrix:
    """A ``rows x cols`` matrix over a ring; columns are images of basis vectors."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring: RingContext, rows: int, cols: int, entries=None):
        self.ring = ring
        self.rows = rows
        self.cols = cols
        if entries is None:
            z = ring.zero
            entries = tuple(tuple(z for _ in range(cols)) for _ in range(rows))
        else:
            entries = tuple(tuple(ring(x) for x in row) for row in entries)
            if len(entries) != rows or any(len(r) != cols for r in entries):
                raise MFError(f"entry grid does not match shape {rows}x{cols}")
        self.entries = entries

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_rows(cls, ring, rows) -> FreeMatrix:
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(ring, len(rows), ncols, rows)

    @classmethod
    def from_columns(cls, ring, columns, rows: int) -> FreeMatrix:
        columns = [list(c) for c in columns]
        grid = [[columns[j][i] for j in range(len(columns))] for i in range(rows)]
        return cls(ring, rows, len(columns), grid)

    @classmethod
    def zeros(cls, ring, rows, cols) -> FreeMatrix:
        return cls(ring, rows, cols)

    @classmethod
    def identity(cls, ring, n, scalar=1) -> FreeMatrix:
        s = ring(scalar)
        z = ring.zero
        return cls(ring, n, n, [[s if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, ring, values) -> FreeMatrix:
        values = [ring(v) for v in values]
        n = len(values)
        z = ring.zero
        return cls(ring, n, n, [[values[i] if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def block(cls, ring, blocks) -> FreeMatrix:
        """Assemble from a grid of matrices; ``None`` or ``0`` entries are zero blocks.

        Block row heights and column widths are inferred from the non-zero
        blocks, so every block row and column needs at least one matrix.
        """
        heights = []
        for brow in blocks:
            hs = {b.rows for b in brow if isinstance(b, FreeMatrix)}
            if len(hs) != 1:
                raise MFError(f"inconsistent block heights {hs}")
            heights.append(hs.pop())
        widths = []
        for j in range(len(blocks[0]) if blocks else 0):
            ws = {brow[j].cols for brow in blocks if isinstance(brow[j], FreeMatrix)}
            if len(ws) != 1:
                raise MFError(f"inconsistent block widths {ws}")
            widths.append(ws.pop())
        return cls.block_sized(ring, blocks, heights, widths)

    @classmethod
    def block_sized(cls, ring, blocks, heights, widths) -> FreeMatrix:
        z = ring.zero
        grid = []
        for bi, brow in enumerate(blocks):
            for r in range(heights[bi]):
                row = []
                for bj, b in enumerate(brow):
                    if isinstance(b, FreeMatrix):
                        if b.rows != heights[bi] or b.cols != widths[bj]:
                            raise MFError("block shape mismatch")
                        row.extend(b.entries[r])
                    else:
                        row.extend([z] * widths[bj])
                grid.append(row)
        return cls(ring, sum(heights), sum(widths), grid)

    # -- access -------------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> list:
        return [self.entries[i][j] for i in range(self.rows)]

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def submatrix(self, rows, cols) -> FreeMatrix:
        return FreeMatrix(self.ring, len(rows), len(cols),
                          [[self.entries[i][j] for j in cols] for i in rows])

    @property
    def shape(self):
        return (self.rows, self.cols)

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other: FreeMatrix):
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def __matmul__(self, other: FreeMatrix) -> FreeMatrix:
        self._check(other)
        if self.cols != other.rows:
            raise MFError(f"cannot compose {self.shape} with {other.shape}")
        z = self.ring.zero
        cols = other.columns()
        grid = []
        for row in self.entries:
            out = []
            for col in cols:
                acc = z
                for a, b in zip(row, col):
                    if a.terms and b.terms:
                        acc = acc + a * b
                out.append(acc)
            grid.append(out)
        return FreeMatrix(self.ring, self.rows, other.cols, grid)

    def __add__(self, other: FreeMatrix) -> FreeMatrix:
        self._check(other)
        if self.shape != other.shape:
            raise MFError(f"shape mismatch {self.shape} vs {other.shape}")
        return FreeMatrix(self.ring, self.rows, self.cols,
                          [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __neg__(self) -> FreeMatrix:
        return FreeMatrix(self.ring, self.rows, self.cols, [[-a for a in r] for r in self.entries])

    def __sub__(self, other: FreeMatrix) -> FreeMatrix:
        return self + (-other)

    def scale(self, c) -> FreeMatrix:
        c = self.ring(c)
        return FreeMatrix(self.ring, self.rows, self.cols, [[c * a for a in r] for r in self.entries])

    def __mul__(self, c) -> FreeMatrix:
        return self.scale(c)

    __rmul__ = __mul__

    def transpose(self) -> FreeMatrix:
        return FreeMatrix(self.ring, self.cols, self.rows,
                          [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    @property
    def T(self) -> FreeMatrix:
        return self.transpose()

    def kron(self, other: FreeMatrix) -> FreeMatrix:
        """Kronecker product, ``self`` index major."""
        self._check(other)
        grid = []
        for i in range(self.rows):
            for k in range(other.rows):
                row = []
                for j in range(self.cols):
                    a = self.entries[i][j]
                    for l in range(other.cols):
                        row.append(a * other.entries[k][l] if a.terms else a)
                grid.append(row)
        return FreeMatrix(self.ring, self.rows * other.rows, self.cols * other.cols, grid)

    def map(self, fn, ring: RingContext | None = None) -> FreeMatrix:
        ring = ring or self.ring
        return FreeMatrix(ring, self.rows, self.cols, [[fn(a) for a in r] for r in self.entries])

    def over(self, ring: RingContext) -> FreeMatrix:
        """Same entries read in another ring with the same variables (e.g. a quotient)."""
        return FreeMatrix(ring, self.rows, self.cols, [[ring(a) for a in r] for r in self.entries])

    # -- predicates / comparison --------------------------------------------
    def is_zero(self) -> bool:
        return all(not a.terms for r in self.entries for a in r)

    def __eq__(self, other):
        if not isinstance(other, FreeMatrix):
            return NotImplemented
        return self.ring == other.ring and self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.shape, self.entries))

    def first_difference(self, other: FreeMatrix):
        """``(i, j, mine, theirs)`` for the first differing entry, or ``None``."""
        for i in range(self.rows):
            for j in range(self.cols):
                if self.entries[i][j] != other.entries[i][j]:
                    return i, j, self.entries[i][j], other.entries[i][j]
        return None

    def to_lists(self) -> list:
        return [[str(a) for a in r] for r in self.entries]

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(a) for a in r) + "]" for r in self.entries) + "]"

    def __repr__(self):
        return f"FreeMatrix({self.rows}x{self.cols}, {self})"


def as_poly(ring: RingContext, value) -> Poly:
    return ring(value)
