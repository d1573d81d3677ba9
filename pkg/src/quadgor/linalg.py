"""Sparse exact linear algebra over QQ or GF(p).

Vectors are dicts ``{column index: nonzero coefficient}``.  :class:`Echelon`
maintains a row space incrementally; every stored row is monic at its pivot,
which is the row's smallest column.
"""

from __future__ import annotations

from heapq import heapify, heappop, heappush

from .field import Field


class Echelon:
    """Incremental row echelon form.

    With ``track=True`` each inserted vector carries a tag (a dict over
    insertion labels) recording which combination of inputs it is; a vector
    that reduces to zero then yields a linear relation among the inputs.
    """

    def __init__(self, field: Field, track: bool = False):
        self.field = field
        self.p = field.char
        self.rows = {}
        self.tags = {} if track else None
        self.track = track

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self):
        return set(self.rows)

    def _axpy(self, v, c, row, heap):
        # v -= c * row, pushing newly created columns onto heap
        p = self.p
        for k, x in row.items():
            old = v.get(k)
            if old is None:
                nv = -c * x
                if p:
                    nv %= p
                if nv:
                    v[k] = nv
                    if heap is not None:
                        heappush(heap, k)
            else:
                nv = old - c * x
                if p:
                    nv %= p
                if nv:
                    v[k] = nv
                else:
                    del v[k]

    def _tag_axpy(self, t, c, tag):
        p = self.p
        for k, x in tag.items():
            nv = t.get(k, 0) - c * x
            if p:
                nv %= p
            if nv:
                t[k] = nv
            else:
                t.pop(k, None)

    def reduce(self, vec, tag=None, full: bool = True):
        """Reduce ``vec`` against the stored rows.

        ``full=True`` clears every pivot column (canonical remainder);
        otherwise stops once the smallest column is not a pivot.
        Returns ``(remainder, tag)``.
        """
        v = dict(vec)
        t = dict(tag) if tag is not None else None
        rows = self.rows
        if not v:
            return v, t
        heap = list(v)
        heapify(heap)
        while heap:
            col = heappop(heap)
            c = v.get(col)
            if c is None:
                continue
            row = rows.get(col)
            if row is None:
                if full:
                    continue
                break
            self._axpy(v, c, row, heap)
            if t is not None:
                self._tag_axpy(t, c, self.tags[col])
        return v, t

    def insert(self, vec, tag=None):
        """Add ``vec`` to the row space.

        Returns ``(pivot, None)`` if it was independent, else ``(None, relation)``
        where ``relation`` is the tag combination that vanished (tracking only).
        """
        v, t = self.reduce(vec, tag, full=False)
        if not v:
            return None, t
        piv = min(v)
        c = v[piv]
        F = self.field
        if c != F.one:
            inv = F.inv(c)
            p = self.p
            if p:
                v = {k: x * inv % p for k, x in v.items()}
                if t is not None:
                    t = {k: x * inv % p for k, x in t.items()}
            else:
                v = {k: x * inv for k, x in v.items()}
                if t is not None:
                    t = {k: x * inv for k, x in t.items()}
        self.rows[piv] = v
        if self.tags is not None:
            self.tags[piv] = t
        return piv, None

    def contains(self, vec) -> bool:
        return not self.reduce(vec)[0]


def rank(vectors, field: Field) -> int:
    ech = Echelon(field)
    for v in vectors:
        if v:
            ech.insert(v)
    return ech.rank


def kernel(images, field: Field):
    """Basis of the kernel of the map sending basis vector k to ``images[k]``.

    Kernel vectors are dicts over domain indices.
    """
    ech = Echelon(field, track=True)
    out = []
    one = field.one
    for k, img in enumerate(images):
        if not img:
            out.append({k: one})
            continue
        piv, rel = ech.insert(img, {k: one})
        if piv is None:
            out.append(rel)
    return out


def independent_subset(vectors, field: Field, modulo: Echelon | None = None):
    """Indices of a maximal subset of ``vectors`` independent modulo ``modulo``'s span."""
    ech = Echelon(field)
    if modulo is not None:
        ech.rows = dict(modulo.rows)
    picked = []
    for i, v in enumerate(vectors):
        if v and ech.insert(v)[0] is not None:
            picked.append(i)
    return picked


def rref(vectors, field: Field):
    """Fully reduced row echelon form of the span, sorted by pivot."""
    ech = Echelon(field)
    for v in vectors:
        if v:
            ech.insert(v)
    out = {}
    for piv in sorted(ech.rows, reverse=True):
        row, _ = ech.reduce({k: x for k, x in ech.rows[piv].items() if k != piv})
        row[piv] = field.one
        out[piv] = row
        ech.rows[piv] = row
    return [out[k] for k in sorted(out)]
