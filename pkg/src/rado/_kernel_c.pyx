# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled avoidability-search kernel.

Mirrors ``_kernel_py.solve`` decision for decision; see that module for the
algorithm notes.  Both implementations must stay in lockstep so that status
and assignment are backend-independent.
"""

from libc.stdlib cimport free, malloc


cdef inline int popcount64(unsigned long long x):
    cdef int c = 0
    while x:
        x &= x - 1
        c += 1
    return c


cdef class _Engine:
    cdef int num_points, colors, ncon, olen
    cdef unsigned long long full_mask
    cdef int *con_off
    cdef int *con_data
    cdef int *adj_off
    cdef int *adj_data
    cdef int *size
    cdef int *cnt          # ncon * colors
    cdef int *unc
    cdef int *color
    cdef unsigned long long *forbid
    cdef int *order
    cdef int *assign_stack
    cdef int as_top
    cdef int *forb_pts
    cdef unsigned long long *forb_bits
    cdef int fb_top
    cdef int *queue_pts
    cdef int *queue_cols
    cdef int introduced

    def __cinit__(self, int num_points, int colors, constraints, order):
        cdef int ncon = len(constraints)
        cdef int total = 0
        cdef int i, j, pt
        for c in constraints:
            total += len(c)
        self.num_points = num_points
        self.colors = colors
        self.ncon = ncon
        self.full_mask = (<unsigned long long>1 << colors) - 1
        self.con_off = <int *>malloc((ncon + 1) * sizeof(int))
        self.con_data = <int *>malloc(max(total, 1) * sizeof(int))
        self.adj_off = <int *>malloc((num_points + 2) * sizeof(int))
        self.adj_data = <int *>malloc(max(total, 1) * sizeof(int))
        self.size = <int *>malloc(max(ncon, 1) * sizeof(int))
        self.cnt = <int *>malloc(max(ncon * colors, 1) * sizeof(int))
        self.unc = <int *>malloc(max(ncon, 1) * sizeof(int))
        self.color = <int *>malloc(max(num_points, 1) * sizeof(int))
        self.forbid = <unsigned long long *>malloc(
            max(num_points, 1) * sizeof(unsigned long long))
        self.olen = len(order)
        self.order = <int *>malloc(max(self.olen, 1) * sizeof(int))
        self.assign_stack = <int *>malloc(max(num_points, 1) * sizeof(int))
        self.forb_pts = <int *>malloc(max(num_points * colors + 4, 1) * sizeof(int))
        self.forb_bits = <unsigned long long *>malloc(
            max(num_points * colors + 4, 1) * sizeof(unsigned long long))
        self.queue_pts = <int *>malloc(max(num_points + 2, 1) * sizeof(int))
        self.queue_cols = <int *>malloc(max(num_points + 2, 1) * sizeof(int))
        if (self.con_off == NULL or self.con_data == NULL or self.adj_off == NULL
                or self.adj_data == NULL or self.size == NULL or self.cnt == NULL
                or self.unc == NULL or self.color == NULL or self.forbid == NULL
                or self.order == NULL or self.assign_stack == NULL
                or self.forb_pts == NULL or self.forb_bits == NULL
                or self.queue_pts == NULL or self.queue_cols == NULL):
            raise MemoryError()

        cdef int pos = 0
        for i in range(ncon):
            self.con_off[i] = pos
            for pt in constraints[i]:
                self.con_data[pos] = pt
                pos += 1
            self.size[i] = pos - self.con_off[i]
            self.unc[i] = self.size[i]
        self.con_off[ncon] = pos

        # counting sort of constraint memberships into per-point adjacency
        for i in range(num_points + 2):
            self.adj_off[i] = 0
        for j in range(pos):
            self.adj_off[self.con_data[j] + 2] += 1
        for i in range(2, num_points + 2):
            self.adj_off[i] += self.adj_off[i - 1]
        for i in range(ncon):
            for j in range(self.con_off[i], self.con_off[i + 1]):
                pt = self.con_data[j]
                self.adj_data[self.adj_off[pt + 1]] = i
                self.adj_off[pt + 1] += 1

        for i in range(num_points):
            self.color[i] = -1
            self.forbid[i] = 0
        for i in range(ncon * colors):
            self.cnt[i] = 0
        for i in range(self.olen):
            self.order[i] = order[i]
        self.as_top = 0
        self.fb_top = 0
        self.introduced = 0

    def __dealloc__(self):
        free(self.con_off)
        free(self.con_data)
        free(self.adj_off)
        free(self.adj_data)
        free(self.size)
        free(self.cnt)
        free(self.unc)
        free(self.color)
        free(self.forbid)
        free(self.order)
        free(self.assign_stack)
        free(self.forb_pts)
        free(self.forb_bits)
        free(self.queue_pts)
        free(self.queue_cols)

    cdef bint assign(self, int point, int g):
        cdef int qtop = 0
        cdef int q, h, h2, ci, x, last, a, colors
        cdef unsigned long long bit, fb
        cdef bint failed
        colors = self.colors
        self.queue_pts[qtop] = point
        self.queue_cols[qtop] = g
        qtop += 1
        while qtop > 0:
            qtop -= 1
            q = self.queue_pts[qtop]
            h = self.queue_cols[qtop]
            if self.color[q] >= 0:
                if self.color[q] != h:
                    return False
                continue
            if self.forbid[q] >> h & 1:
                return False
            self.color[q] = h
            if h >= self.introduced:
                self.introduced = h + 1
            self.assign_stack[self.as_top] = q
            self.as_top += 1
            # on conflict, finish updating every counter of q before failing:
            # undo() walks the full adjacency of each stacked point, so the
            # bookkeeping must stay symmetric
            failed = False
            for a in range(self.adj_off[q], self.adj_off[q + 1]):
                ci = self.adj_data[a]
                self.cnt[ci * colors + h] += 1
                self.unc[ci] -= 1
                if failed:
                    continue
                if self.cnt[ci * colors + h] == self.size[ci]:
                    failed = True
                    continue
                if self.unc[ci] == 1 and self.cnt[ci * colors + h] == self.size[ci] - 1:
                    last = -1
                    for x in range(self.con_off[ci], self.con_off[ci + 1]):
                        if self.color[self.con_data[x]] < 0:
                            last = self.con_data[x]
                            break
                    if last < 0:
                        continue
                    bit = <unsigned long long>1 << h
                    fb = self.forbid[last]
                    if not fb & bit:
                        fb |= bit
                        self.forbid[last] = fb
                        self.forb_pts[self.fb_top] = last
                        self.forb_bits[self.fb_top] = bit
                        self.fb_top += 1
                        if fb == self.full_mask:
                            failed = True
                            continue
                        if popcount64(fb) == colors - 1:
                            bit = self.full_mask ^ fb
                            h2 = 0
                            while not (bit >> h2 & 1):
                                h2 += 1
                            self.queue_pts[qtop] = last
                            self.queue_cols[qtop] = h2
                            qtop += 1
            if failed:
                return False
        return True

    cdef void undo(self, int assign_mark, int forb_mark):
        cdef int q, h, a, ci
        cdef int colors = self.colors
        while self.as_top > assign_mark:
            self.as_top -= 1
            q = self.assign_stack[self.as_top]
            h = self.color[q]
            for a in range(self.adj_off[q], self.adj_off[q + 1]):
                ci = self.adj_data[a]
                self.cnt[ci * colors + h] -= 1
                self.unc[ci] += 1
            self.color[q] = -1
        while self.fb_top > forb_mark:
            self.fb_top -= 1
            self.forbid[self.forb_pts[self.fb_top]] ^= self.forb_bits[self.fb_top]

    cdef bint dfs(self, int oi):
        cdef int x, g, top, am, fm, saved
        cdef unsigned long long fb
        while oi < self.olen and self.color[self.order[oi]] >= 0:
            oi += 1
        if oi == self.olen:
            return True
        x = self.order[oi]
        top = self.introduced
        if top > self.colors - 1:
            top = self.colors - 1
        fb = self.forbid[x]
        for g in range(top + 1):
            if fb >> g & 1:
                continue
            am = self.as_top
            fm = self.fb_top
            saved = self.introduced
            if self.assign(x, g):
                if self.dfs(oi + 1):
                    return True
            self.undo(am, fm)
            self.introduced = saved
        return False


def solve(num_points, colors, constraints, order, prefix=()):
    """Compiled twin of ``_kernel_py.solve``; same contract, same results."""
    if colors >= 63:
        raise ValueError("more than 62 colors is not supported")
    cdef _Engine engine = _Engine(num_points, colors, constraints, order)
    for point, g in prefix:
        if g >= colors:
            raise ValueError("prefix color out of range")
        if not engine.assign(point, g):
            return False, None
    if engine.dfs(0):
        result = [engine.color[i] if engine.color[i] >= 0 else 0
                  for i in range(num_points)]
        return True, result
    return False, None
