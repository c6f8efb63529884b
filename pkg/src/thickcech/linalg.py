"""Dense exact matrices over a :class:`~thickcech.fields.Field`.

Row reduction pivots on the first usable row in column order, so echelon
forms, kernels and solutions are reproducible.
"""


class ExactMatrix:

    def __init__(self, rows, field, ncols=None):
        self.field = field
        self.rows = [[field.coerce(c) for c in row] for row in rows]
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != ncols for r in self.rows):
            raise ValueError("ragged matrix")
        self.ncols = ncols

    @classmethod
    def zeros(cls, nrows, ncols, field):
        return cls([[field.zero] * ncols for _ in range(nrows)], field, ncols)

    @classmethod
    def from_columns(cls, columns, nrows, field):
        rows = [[field.zero] * len(columns) for _ in range(nrows)]
        for j, col in enumerate(columns):
            for i, c in enumerate(col):
                rows[i][j] = c
        return cls(rows, field, len(columns))

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def columns(self):
        return [[row[j] for row in self.rows] for j in range(self.ncols)]

    def transpose(self):
        return ExactMatrix(self.columns(), self.field, self.nrows)

    def __mul__(self, other):
        F = self.field
        if isinstance(other, ExactMatrix):
            cols = other.columns()
            return ExactMatrix([[_dot(F, row, col) for col in cols] for row in self.rows],
                               F, other.ncols)
        return [_dot(F, row, other) for row in self.rows]

    def __eq__(self, other):
        return (isinstance(other, ExactMatrix) and self.field == other.field
                and self.shape == other.shape and self.rows == other.rows)

    def __repr__(self):
        return f"ExactMatrix({self.nrows}x{self.ncols} over {self.field})"

    def rref(self):
        """Reduced row echelon form and the pivot columns."""
        F = self.field
        m = [list(r) for r in self.rows]
        pivots = []
        r = 0
        for c in range(self.ncols):
            if r == len(m):
                break
            piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            inv = F.inv(m[r][c])
            m[r] = [F.mul(inv, a) for a in m[r]]
            for i in range(len(m)):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
        return ExactMatrix(m, F, self.ncols), pivots

    def rank(self):
        return len(self.rref()[1])

    def nullspace(self):
        """Basis of {v : Mv = 0}, one vector per free column."""
        F = self.field
        red, pivots = self.rref()
        free = [c for c in range(self.ncols) if c not in set(pivots)]
        basis = []
        for fc in free:
            v = [F.zero] * self.ncols
            v[fc] = F.one
            for row, pc in zip(red.rows, pivots):
                v[pc] = F.neg(row[fc])
            basis.append(v)
        return basis

    def solve(self, b):
        """Some x with Mx = b, or None."""
        F = self.field
        aug = ExactMatrix([row + [bi] for row, bi in zip(self.rows, b)], F, self.ncols + 1)
        red, pivots = aug.rref()
        if pivots and pivots[-1] == self.ncols:
            return None
        x = [F.zero] * self.ncols
        for row, pc in zip(red.rows, pivots):
            x[pc] = row[-1]
        return x

    def contains_column(self, b):
        return self.solve(b) is not None


def _dot(F, a, b):
    s = F.zero
    for x, y in zip(a, b):
        if x != 0 and y != 0:
            s = F.add(s, F.mul(x, y))
    return s


def column_rank(columns, nrows, field):
    if not columns:
        return 0
    return ExactMatrix.from_columns(columns, nrows, field).rank()
