"""
GF(2) linear algebra on int bitsets: vector matroids, binarity, graphic
matroids, projective geometries and matrix minors.

A BinaryMatrix keeps its rows as words over column positions; columns are
derived on demand as words over row positions.
"""
from dataclasses import dataclass
from functools import cached_property

import networkx as nx
from django.conf import settings

from .core import GroundSet, Matroid, bits, compress, default_labels, lex_key
from .exceptions import GroundSetOverflow, PreconditionViolated


@dataclass(frozen=True)
class BinaryMatrix:
    height: int
    rows: tuple
    ground: GroundSet

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        if self.ground.size > settings.MATROID_LAZY_LIMIT:
            raise GroundSetOverflow(
                f"{self.ground.size} columns exceed the limit of {settings.MATROID_LAZY_LIMIT}",
                size=self.ground.size,
            )
        if len(self.rows) != self.height:
            raise PreconditionViolated(f"expected {self.height} rows, got {len(self.rows)}")
        if any(row & ~self.ground.full for row in self.rows):
            raise PreconditionViolated("row entries beyond the last column")

    @classmethod
    def from_columns(cls, columns, height, ground):
        rows = [0] * height
        for position, column in enumerate(columns):
            for row in bits(column):
                rows[row] |= 1 << position
        return cls(height, tuple(rows), ground)

    @classmethod
    def from_text(cls, lines, ground):
        """Rows given as strings of 0/1 characters, one per row."""
        rows = []
        for line in lines:
            rows.append(sum(1 << position for position, ch in enumerate(line) if ch == "1"))
        return cls(len(rows), tuple(rows), ground)

    @property
    def width(self):
        return self.ground.size

    @property
    def labels(self):
        return self.ground.labels

    @cached_property
    def columns(self):
        columns = [0] * self.width
        for index, row in enumerate(self.rows):
            for position in bits(row):
                columns[position] |= 1 << index
        return tuple(columns)

    def column(self, label):
        return self.columns[self.ground.index(label)]

    def text_rows(self):
        return ["".join("1" if row >> position & 1 else "0" for position in range(self.width)) for row in self.rows]

    def rank(self, word=None):
        """GF(2) rank of the columns in word (all columns by default)."""
        if word is None:
            return gf2_rank(self.columns)
        return gf2_rank(self.columns[position] for position in bits(word))

    def __str__(self):
        return "\n".join(self.text_rows())


def eliminate(vector, pivots):
    """Reduce vector against an XOR basis keyed by leading bit."""
    while vector:
        top = vector.bit_length() - 1
        if top not in pivots:
            break
        vector ^= pivots[top]
    return vector


def gf2_rank(vectors):
    pivots = {}
    for vector in vectors:
        vector = eliminate(vector, pivots)
        if vector:
            pivots[vector.bit_length() - 1] = vector
    return len(pivots)


def identity(n, labels=None):
    return BinaryMatrix.from_columns([1 << i for i in range(n)], n, GroundSet(labels or default_labels(n)))


def reduced_row_echelon(A):
    """Row-reduce A; returns (nonzero rows, pivot column of each row)."""
    rows = list(A.rows)
    pivots = []
    top = 0
    for column in range(A.width):
        pick = next((i for i in range(top, len(rows)) if rows[i] >> column & 1), None)
        if pick is None:
            continue
        rows[top], rows[pick] = rows[pick], rows[top]
        for i in range(len(rows)):
            if i != top and rows[i] >> column & 1:
                rows[i] ^= rows[top]
        pivots.append(column)
        top += 1
    return rows[:top], pivots


def vector_matroid(A, name=None):
    if A.width > settings.MATROID_EXPLICIT_LIMIT:
        raise GroundSetOverflow(
            f"{A.width} columns exceed the explicit limit of {settings.MATROID_EXPLICIT_LIMIT}", size=A.width
        )
    columns = A.columns
    r = gf2_rank(columns)
    bases = []

    def extend(start, chosen, pivots, size):
        if size == r:
            bases.append(chosen)
            return
        for i in range(start, len(columns) - (r - size) + 1):
            vector = eliminate(columns[i], pivots)
            if vector:
                extend(i + 1, chosen | 1 << i, {**pivots, vector.bit_length() - 1: vector}, size + 1)

    extend(0, 0, {}, 0)
    return Matroid(A.ground, bases, name)


def fundamental_matrix(M, basis):
    """Fundamental-circuit incidence matrix of M with respect to basis."""
    rows_of = {e: row for row, e in enumerate(bits(basis))}
    columns = []
    for e in range(M.size):
        if e in rows_of:
            columns.append(1 << rows_of[e])
            continue
        column = 0
        for f, row in rows_of.items():
            if basis ^ (1 << f) | (1 << e) in M.bases:
                column |= 1 << row
        columns.append(column)
    return BinaryMatrix.from_columns(columns, len(rows_of), M.ground)


def is_binary(M):
    """(True, representing matrix) if M is binary, else (False, None)."""
    basis = min(M.bases, key=lex_key)
    candidate = fundamental_matrix(M, basis)
    if vector_matroid(candidate).bases == M.bases:
        return True, candidate
    return False, None


def graphic(edges, labels=None, name=None):
    """Cycle matroid of a multigraph given by its edge list (loops allowed)."""
    edges = list(edges)
    graph = nx.MultiGraph()
    for position, (u, v) in enumerate(edges):
        graph.add_edge(u, v, key=position)
    index = {vertex: row for row, vertex in enumerate(graph.nodes)}
    columns = [0 if u == v else 1 << index[u] | 1 << index[v] for u, v in edges]
    ground = GroundSet(tuple(labels) if labels else default_labels(len(edges)))
    return vector_matroid(BinaryMatrix.from_columns(columns, graph.number_of_nodes(), ground), name)


def projective_geometry(k, labels=None):
    """All nonzero vectors of GF(2)^k as columns, in lexicographic order (row 1 most significant)."""
    if k < 1:
        raise PreconditionViolated("projective geometry needs k >= 1", k=k)
    columns = []
    for value in range(1, 1 << k):
        columns.append(sum(1 << row for row in range(k) if value >> (k - 1 - row) & 1))
    ground = GroundSet(tuple(labels) if labels else default_labels(len(columns)))
    return BinaryMatrix.from_columns(columns, k, ground)


def delete_column(A, label):
    keep = A.ground.full ^ (1 << A.ground.index(label))
    return BinaryMatrix(A.height, tuple(compress(row, keep) for row in A.rows), A.ground.restrict(keep))


def contract_column(A, label):
    position = A.ground.index(label)
    pivot_column = A.columns[position]
    if not pivot_column:
        return delete_column(A, label)
    keep = A.ground.full ^ (1 << position)
    pivot = (pivot_column & -pivot_column).bit_length() - 1
    row_keep = ((1 << A.height) - 1) ^ (1 << pivot)
    columns = []
    for other, column in enumerate(A.columns):
        if other == position:
            continue
        if column >> pivot & 1:
            column ^= pivot_column
        columns.append(compress(column, row_keep))
    return BinaryMatrix.from_columns(columns, A.height - 1, A.ground.restrict(keep))


def fundamental_graph(A):
    """Bipartite graph joining each basis column to the columns of its fundamental circuits."""
    rows, pivots = reduced_row_echelon(A)
    graph = nx.Graph()
    graph.add_nodes_from(A.labels)
    for row, pivot in zip(rows, pivots):
        for position in bits(row):
            if position != pivot:
                graph.add_edge(A.labels[pivot], A.labels[position])
    return graph


def is_connected_binary(A):
    if A.width <= 1:
        return True
    return nx.is_connected(fundamental_graph(A))
