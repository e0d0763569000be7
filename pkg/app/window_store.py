"""
Ring buffer over the live window of the stream.

Positions are absolute stream offsets; the buffer maps them onto
capacity + 1 cells so a shift can append before it evicts.
"""

from .errors import InvariantViolation, WindowRangeError


class WindowBuffer:
    __slots__ = ('capacity', '_cells', '_size', 'n', 'start')

    def __init__(self, capacity: int):
        if not isinstance(capacity, int) or capacity < 1:
            raise ValueError('capacity must be an integer >= 1')
        self.capacity = capacity
        self._size = capacity + 1
        self._cells = bytearray(self._size)
        self.n = 0
        self.start = 0

    def __len__(self) -> int:
        return self.n - self.start

    def __repr__(self) -> str:
        return f'WindowBuffer(capacity={self.capacity}, start={self.start}, n={self.n}, {self.content()!r})'

    def push(self, c: int) -> int:
        """Store byte c at position n and return that position."""
        if self.n - self.start >= self._size:
            raise InvariantViolation(
                f'ring overwrite: pushing position {self.n} would clobber unevicted {self.start}')
        pos = self.n
        self._cells[pos % self._size] = c
        self.n = pos + 1
        return pos

    def char_at(self, p: int) -> int:
        if p < self.start or p >= self.n:
            raise WindowRangeError(f'position {p} outside window [{self.start}, {self.n})')
        return self._cells[p % self._size]

    def substring_equals(self, p: int, s: bytes) -> bool:
        end = p + len(s)
        if p < self.start or end > self.n:
            raise WindowRangeError(f'range [{p}, {end}) escapes window [{self.start}, {self.n})')
        cells = self._cells
        size = self._size
        for k, ch in enumerate(s):
            if cells[(p + k) % size] != ch:
                return False
        return True

    def advance_start(self) -> int:
        if self.n - self.start < 1:
            raise InvariantViolation('advance_start on an empty window')
        self.start += 1
        return self.start

    def slice(self, lo: int, hi: int) -> bytes:
        """Bytes at positions [lo, hi)."""
        if lo < self.start or hi > self.n or lo > hi:
            raise WindowRangeError(f'range [{lo}, {hi}) escapes window [{self.start}, {self.n})')
        size = self._size
        a, b = lo % size, hi % size
        if hi - lo == 0:
            return b''
        if a < b:
            return bytes(self._cells[a:b])
        return bytes(self._cells[a:]) + bytes(self._cells[:b])

    def content(self) -> bytes:
        return self.slice(self.start, self.n)
