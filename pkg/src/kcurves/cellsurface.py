"""Oriented polygonal cell complexes and transverse curve words.

A surface is encoded by polygonal faces glued edge to edge:

  - face ``f`` has ``m_f`` sides; *slot* ``(f, j)`` is side ``j`` in the
    counterclockwise boundary order, flattened to a global integer id;
  - a gluing is a fixed-point-free partial involution on slots; an unglued
    slot is a boundary edge.  Identifications always reverse the induced
    boundary direction, so every complex built this way is oriented.
  - *corner* ``c`` (same id space as slots) is the face corner at the start
    of side ``c``.  Rotating counterclockwise around the underlying vertex
    sends corner ``c`` to ``next_slot(glued[c])``.

Closed curves transverse to the 1-skeleton are *words*: cyclic tuples of
darts, where the dart for slot ``s`` crosses the edge of ``s`` from
``face(s)`` into ``face(glued(s))``.  Free homotopy is generated by two
word moves: deleting a backtrack (a dart immediately undone) and pushing a
fan of consecutive crossings across an interior vertex.  ``canonical``
reduces a word with non-increasing moves, exploring the equal-length
plateau exhaustively, and returns the lexicographically least minimal word
over all rotations and both orientations; ``None`` encodes the trivial
class.
"""

from __future__ import annotations

from collections import deque

from .errors import EngineStall, PathLeavesSurface, PathNotClosed

PLATEAU_CAP = 200_000


class CellSurface:
    def __init__(self, face_sizes, gluing, check=True):
        self.face_sizes = tuple(int(m) for m in face_sizes)
        self.nfaces = len(self.face_sizes)
        self.face_start = []
        acc = 0
        for m in self.face_sizes:
            if m < 1:
                raise ValueError("faces need at least one side")
            self.face_start.append(acc)
            acc += m
        self.nslots = acc

        glued = [None] * self.nslots
        items = gluing.items() if isinstance(gluing, dict) else enumerate(gluing)
        for s, t in items:
            if t is not None:
                glued[s] = t
        self.glued = tuple(glued)
        self.face_of = tuple(
            f for f, m in enumerate(self.face_sizes) for _ in range(m)
        )

        if check:
            self._check_gluing()
        self._build_edges()
        self._build_vertices()
        self._canon_cache: dict[tuple, tuple | None] = {}
        self._plateau_cache: dict[tuple, frozenset] = {}
        self._homology = None

    # -- construction ------------------------------------------------------

    def _check_gluing(self):
        for s, t in enumerate(self.glued):
            if t is None:
                continue
            if not (0 <= t < self.nslots):
                raise ValueError(f"slot {s} glued to invalid slot {t}")
            if t == s:
                raise ValueError(f"slot {s} glued to itself")
            if self.glued[t] != s:
                raise ValueError(f"gluing is not an involution at slot {s}")

    def _build_edges(self):
        self.edge_index = [None] * self.nslots
        edge_slots = []
        for s in range(self.nslots):
            if self.edge_index[s] is not None:
                continue
            t = self.glued[s]
            eid = len(edge_slots)
            self.edge_index[s] = eid
            if t is not None:
                self.edge_index[t] = eid
            edge_slots.append((s, t))
        self.edge_index = tuple(self.edge_index)
        self.edge_slots = tuple(edge_slots)
        self.nedges = len(edge_slots)

    def _build_vertices(self):
        n = self.nslots
        vert = [None] * n
        vertex_corners = []
        interior = []
        for c0 in range(n):
            if vert[c0] is not None:
                continue
            # rotate clockwise to a boundary start, if there is one
            start = c0
            steps = 0
            while True:
                p = self.prev_slot(start)
                if self.glued[p] is None:
                    break
                prev_c = self.glued[p]
                if prev_c == c0:
                    break  # came all the way around: interior vertex
                start = prev_c
                steps += 1
                if steps > n:
                    raise ValueError("corner rotation does not close")
            cycle = []
            c = start
            closed = False
            while True:
                cycle.append(c)
                s = self.glued[c]
                if s is None:
                    break  # boundary vertex: rotation stops here
                nxt = self.next_slot(s)
                if nxt == start:
                    closed = True
                    break
                c = nxt
            vid = len(vertex_corners)
            for c in cycle:
                vert[c] = vid
            vertex_corners.append(tuple(cycle))
            interior.append(closed)
        self.vertex_of_corner = tuple(vert)
        self.vertex_corners = tuple(vertex_corners)
        self.vertex_interior = tuple(interior)
        self.nvertices = len(vertex_corners)
        pos = [None] * n
        for corners in vertex_corners:
            for i, c in enumerate(corners):
                pos[c] = i
        self.corner_pos = tuple(pos)

    # -- basic queries ------------------------------------------------------

    def next_slot(self, s):
        f = self.face_of[s]
        st = self.face_start[f]
        return st + (s - st + 1) % self.face_sizes[f]

    def prev_slot(self, s):
        f = self.face_of[s]
        st = self.face_start[f]
        return st + (s - st - 1) % self.face_sizes[f]

    def face_slots(self, f):
        st = self.face_start[f]
        return range(st, st + self.face_sizes[f])

    def dart_target(self, d):
        t = self.glued[d]
        return None if t is None else self.face_of[t]

    def is_closed(self):
        return all(t is not None for t in self.glued)

    def euler_characteristic(self):
        return self.nvertices - self.nedges + self.nfaces

    def connected_components(self):
        comp = [None] * self.nfaces
        out = []
        for f0 in range(self.nfaces):
            if comp[f0] is not None:
                continue
            cid = len(out)
            comp[f0] = cid
            todo, faces = [f0], []
            while todo:
                f = todo.pop()
                faces.append(f)
                for s in self.face_slots(f):
                    t = self.glued[s]
                    if t is not None and comp[self.face_of[t]] is None:
                        comp[self.face_of[t]] = cid
                        todo.append(self.face_of[t])
            out.append(sorted(faces))
        return out

    def genus(self):
        """Genus of a closed connected complex."""
        chi = self.euler_characteristic()
        if chi % 2:
            raise ValueError("odd Euler characteristic on a closed surface")
        return (2 - chi) // 2

    # -- words ---------------------------------------------------------------

    def check_word(self, word):
        if not word:
            raise PathNotClosed("empty crossing word")
        for d in word:
            if not (0 <= d < self.nslots) or self.glued[d] is None:
                raise PathLeavesSurface(f"dart {d} does not cross an interior edge")
        for i, d in enumerate(word):
            nxt = word[(i + 1) % len(word)]
            if self.face_of[self.glued[d]] != self.face_of[nxt]:
                raise PathNotClosed(
                    f"darts {d} and {nxt} at position {i} do not share a face"
                )

    def reverse_word(self, word):
        return tuple(self.glued[d] for d in reversed(word))

    @staticmethod
    def min_rotation(word):
        L = len(word)
        return min(word[i:] + word[:i] for i in range(L)) if L else word

    def remove_backtracks(self, word):
        w = list(word)
        changed = True
        while changed and w:
            changed = False
            L = len(w)
            for i in range(L):
                j = (i + 1) % L
                if w[j] == self.glued[w[i]]:
                    if j > i:
                        del w[j], w[i]
                    else:
                        del w[i], w[0]
                    changed = True
                    break
        return tuple(w)

    def _fan_links(self, word):
        """Per-position flags: does the passage after dart i hug a corner."""
        L = len(word)
        ccw = [False] * L
        cw = [False] * L
        for i in range(L):
            nxt = word[(i + 1) % L]
            g = self.glued[word[i]]
            if nxt == self.next_slot(g):
                if self.vertex_interior[self.vertex_of_corner[nxt]]:
                    ccw[i] = True
            if nxt == self.prev_slot(g):
                if self.vertex_interior[self.vertex_of_corner[g]]:
                    cw[i] = True
        return ccw, cw

    @staticmethod
    def _runs(links):
        """Maximal circular blocks of True; (dart_start, dart_count) pairs.

        A block of p chained passages spans p+1 darts.  Callers handle the
        all-True (spiral) case before calling.
        """
        L = len(links)
        f0 = next(i for i in range(L) if not links[i])
        runs = []
        count = 0
        for step in range(1, L + 1):
            j = (f0 + step) % L
            if links[j]:
                if count == 0:
                    start = j
                count += 1
            elif count:
                runs.append((start, count + 1))
                count = 0
        if count:
            runs.append((start, count + 1))
        return runs

    def _fan_vertex(self, word, i, direction):
        d = word[i]
        return self.vertex_of_corner[d if direction > 0 else self.glued[d]]

    def apply_fan(self, word, i, m, direction):
        """Push darts word[i:i+m] (cyclic) across their common vertex."""
        L = len(word)
        v = self._fan_vertex(word, i, direction)
        corners = self.vertex_corners[v]
        D = len(corners)
        if direction > 0:
            t = self.corner_pos[word[i]]
            repl = tuple(self.glued[corners[(t - 1 - q) % D]] for q in range(D - m))
        else:
            b = self.corner_pos[self.glued[word[i]]]
            repl = tuple(corners[(b + 1 + q) % D] for q in range(D - m))
        if i + m <= L:
            return word[:i] + repl + word[i + m:]
        rot = word[i:] + word[:i]
        return repl + rot[m:]

    def _find_reduction(self, word):
        """One strictly shorter homotopic word, or None if locally taut."""
        L = len(word)
        for i in range(L):
            if word[(i + 1) % L] == self.glued[word[i]]:
                return self.remove_backtracks(word)
        ccw, cw = self._fan_links(word)
        if all(ccw) or all(cw):
            return ()  # full spiral around one vertex: trivial class
        for direction, links in ((1, ccw), (-1, cw)):
            if not any(links):
                continue
            for start, m in self._runs(links):
                v = self._fan_vertex(word, start, direction)
                D = len(self.vertex_corners[v])
                if m >= D:
                    if m > L:
                        m = L
                    return self.apply_fan(word, start, min(D, m), direction)
                if 2 * m > D:
                    return self.apply_fan(word, start, m, direction)
        return None

    def _plateau_neighbors(self, word):
        """Words one length-preserving fan move away."""
        out = []
        ccw, cw = self._fan_links(word)
        for direction, links in ((1, ccw), (-1, cw)):
            if not any(links):
                continue
            for start, m in self._runs(links):
                v = self._fan_vertex(word, start, direction)
                D = len(self.vertex_corners[v])
                if D % 2 or m < D // 2:
                    continue
                half = D // 2
                for off in range(m - half + 1):
                    out.append(
                        self.apply_fan(word, (start + off) % len(word), half, direction)
                    )
        # single-crossing slides across interior degree-2 vertices
        for i, d in enumerate(word):
            for direction, corner in ((1, d), (-1, self.glued[d])):
                v = self.vertex_of_corner[corner]
                if self.vertex_interior[v] and len(self.vertex_corners[v]) == 2:
                    out.append(self.apply_fan(word, i, 1, direction))
        return out

    def reduce_word(self, word):
        """Greedy non-increasing reduction; returns (is_trivial, word)."""
        w = self.remove_backtracks(tuple(word))
        while w:
            nw = self._find_reduction(w)
            if nw is None:
                return False, w
            w = self.remove_backtracks(nw)
        return True, ()

    def canonical(self, word):
        """Canonical form of the free homotopy class (None = trivial)."""
        word = tuple(word)
        if not word:
            return None
        self.check_word(word)
        key = self.min_rotation(word)
        if key in self._canon_cache:
            return self._canon_cache[key]
        canon, plateau = self._canonical_plateau(key)
        for w in plateau:
            self._canon_cache[w] = canon
            self._plateau_cache[w] = plateau
        self._canon_cache[key] = canon
        return canon

    def plateau(self, word):
        """All minimal-length words of the class, rotation-normalized."""
        canon = self.canonical(word)
        if canon is None:
            return frozenset()
        return self._plateau_cache[canon]

    def _canonical_plateau(self, word):
        trivial, w = self.reduce_word(word)
        if trivial:
            return None, frozenset()
        while True:
            start = self.min_rotation(w)
            seen = {start}
            queue = deque([start])
            shorter = None
            while queue:
                state = queue.popleft()
                red = self._find_reduction(state)
                if red is not None:
                    shorter = red
                    break
                for nb in self._plateau_neighbors(state):
                    nb = self.min_rotation(nb)
                    if nb not in seen:
                        if len(seen) >= PLATEAU_CAP:
                            raise EngineStall("plateau exploration overflow")
                        seen.add(nb)
                        queue.append(nb)
            if shorter is None:
                full = frozenset(
                    x
                    for s in seen
                    for x in (s, self.min_rotation(self.reverse_word(s)))
                )
                return min(full), full
            trivial, w = self.reduce_word(shorter)
            if trivial:
                return None, frozenset()

    def classes_equal(self, w1, w2):
        return self.canonical(w1) == self.canonical(w2)

    def is_trivial(self, word):
        return self.canonical(word) is None

    # -- homology ------------------------------------------------------------

    def _edge_sign(self, dart):
        return 1 if dart == self.edge_slots[self.edge_index[dart]][0] else -1

    def signed_crossings(self, word):
        z = [0] * self.nedges
        for d in word:
            z[self.edge_index[d]] += self._edge_sign(d)
        return z

    def _homology_rows(self):
        if self._homology is None:
            rows = []
            for v, corners in enumerate(self.vertex_corners):
                if not self.vertex_interior[v]:
                    continue
                z = [0] * self.nedges
                for c in corners:
                    z[self.edge_index[c]] += self._edge_sign(c)
                if any(z):
                    rows.append(z)
            self._homology = _echelon_int(rows)
        return self._homology

    def homology_fingerprint(self, word):
        """Signed crossing vector modulo vertex loops, up to global sign."""
        if not word:
            return (0,) * self.nedges
        z = self.signed_crossings(word)
        rows = self._homology_rows()
        a = tuple(_reduce_mod_rows(list(z), rows))
        b = tuple(_reduce_mod_rows([-x for x in z], rows))
        return min(a, b)

    # -- edge paths ------------------------------------------------------------

    def edge_path_tail(self, s):
        return self.vertex_of_corner[s]

    def edge_path_head(self, s):
        return self.vertex_of_corner[self.next_slot(s)]

    def transverse_from_edge_path(self, path):
        """Left push-off of a closed 1-skeleton edge path, as a word.

        ``path`` lists slots, each traversed from its start corner to its
        end corner; consecutive edges must share the turning vertex.  The
        result may be empty (null-homotopic push-off, e.g. a face boundary).
        """
        if not path:
            raise PathNotClosed("empty edge path")
        for s in path:
            if not (0 <= s < self.nslots) or self.glued[s] is None:
                raise PathLeavesSurface(f"slot {s} is not an interior edge")
        word = []
        L = len(path)
        for j in range(L):
            s, t = path[j], path[(j + 1) % L]
            if self.edge_path_head(s) != self.edge_path_tail(t):
                raise PathNotClosed(f"edges at positions {j},{j+1} do not meet")
            a = self.glued[s]
            v = self.vertex_of_corner[a]
            if not self.vertex_interior[v]:
                raise PathLeavesSurface("edge path turns at a boundary vertex")
            corners = self.vertex_corners[v]
            D = len(corners)
            q = (self.corner_pos[a] + 1) % D
            ib = self.corner_pos[t]
            while q != ib:
                word.append(corners[q])
                q = (q + 1) % D
        word = tuple(word)
        if word:
            self.check_word(word)
        return word


def _echelon_int(rows):
    """Integer row echelon form (same row space, positive pivots)."""
    mat = [list(r) for r in rows if any(r)]
    out = []
    if not mat:
        return out
    ncols = len(mat[0])
    for col in range(ncols):
        live = [r for r in mat if r[col] != 0]
        if not live:
            continue
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            p = live[0]
            for r in live[1:]:
                q = r[col] // p[col]
                if q:
                    for k in range(col, ncols):
                        r[k] -= q * p[k]
            live = [r for r in live if r[col] != 0]
        p = live[0]
        if p[col] < 0:
            for k in range(ncols):
                p[k] = -p[k]
        out.append(p)
        mat = [r for r in mat if r is not p and any(r)]
    return out


def _reduce_mod_rows(z, rows):
    for row in rows:
        col = next(i for i, x in enumerate(row) if x)
        q = z[col] // row[col]
        if q:
            for k in range(col, len(z)):
                z[k] -= q * row[k]
    return z
