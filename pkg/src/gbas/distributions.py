"""Random streams, variate generators and Bernoulli / [0,1] sources.

Randomness comes from numpy's counter-based Philox4x64-10 generator. A
stream is identified by ``(seed, index)``: the seed (plus an optional lane
number) fixes the Philox key, and the index occupies the third counter word.
Streams with different indices therefore never overlap, and replicate ``i``
of an experiment can be regenerated on its own, in any order, on any thread.

Uniforms are mapped into the open interval (0, 1) as ``(b + 1/2) / 2**53``,
where ``b`` is the top 53 bits of a raw 64-bit output, so logarithms of
uniforms are always finite.
"""

import math
import sys

import numpy as np

from .errors import DataError, DomainError

__all__ = [
    "derive_key",
    "RngStream",
    "ScriptedStream",
    "exp_sample",
    "geometric_sample",
    "gamma_sample",
    "BernoulliSource",
    "SyntheticBernoulli",
    "ScriptedBernoulli",
    "LineBernoulliSource",
    "UnitIntervalSource",
    "ScriptedUnitInterval",
    "LineUnitIntervalSource",
    "UnitIntervalBernoulli",
    "bernoulli_from_unit",
    "synthetic_bernoulli",
    "open_source",
]

_TWO_M53 = 2.0 ** -53
_BUFFER = 256


def derive_key(seed, lane=0):
    """Philox key (two uint64 words) for a master seed and lane."""
    if seed is None or int(seed) < 0:
        raise DomainError(f"seed must be a nonnegative integer, got {seed!r}")
    ss = np.random.SeedSequence(int(seed), spawn_key=(int(lane),))
    k0, k1 = ss.generate_state(2, dtype=np.uint64)
    return int(k0), int(k1)


class RngStream:
    """Deterministic uniform stream for one ``(seed, index)`` pair.

    Not safe to share between threads; give each worker its own index.
    """

    def __init__(self, seed, index=0, lane=0):
        if int(index) < 0:
            raise DomainError(f"stream index must be nonnegative, got {index!r}")
        self.seed = int(seed)
        self.index = int(index)
        self.lane = int(lane)
        self.key = derive_key(self.seed, self.lane)
        self._bitgen = np.random.Philox(
            key=np.array(self.key, dtype=np.uint64),
            counter=np.array([0, 0, self.index, 0], dtype=np.uint64),
        )
        self._buf = np.empty(0)
        self._pos = 0
        self.position = 0

    def __repr__(self):
        return f"RngStream(seed={self.seed}, index={self.index}, lane={self.lane}, position={self.position})"

    def _refill(self):
        raw = self._bitgen.random_raw(_BUFFER)
        self._buf = ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * _TWO_M53
        self._pos = 0

    def uniform(self):
        """Next uniform in (0, 1)."""
        if self._pos >= self._buf.shape[0]:
            self._refill()
        u = float(self._buf[self._pos])
        self._pos += 1
        self.position += 1
        return u

    def uniforms(self, n):
        return np.array([self.uniform() for _ in range(n)])


class ScriptedStream:
    """Replays a fixed list of uniforms; for tests and traces."""

    def __init__(self, values):
        self._values = [float(v) for v in values]
        for v in self._values:
            if not 0.0 < v < 1.0:
                raise DomainError(f"scripted uniforms must lie in (0, 1), got {v!r}")
        self.position = 0

    @classmethod
    def from_exponentials(cls, values):
        """Stream whose unit-rate exponential draws are (up to rounding) ``values``."""
        return cls([math.exp(-float(a)) for a in values])

    def uniform(self):
        if self.position >= len(self._values):
            raise DataError(f"scripted stream exhausted after {self.position} values")
        u = self._values[self.position]
        self.position += 1
        return u


def exp_sample(rng, rate=1.0):
    """Ex(rate) draw by inversion of one uniform."""
    if not rate > 0:
        raise DomainError(f"exponential rate must be positive, got {rate!r}")
    return -math.log(rng.uniform()) / rate


def geometric_sample(rng, p):
    """Geo(p) on {1, 2, ...} by inversion; O(1) for every p.

    One uniform is consumed even when p == 1, which keeps draw positions
    aligned with the vectorized kernels.
    """
    if not 0.0 < p <= 1.0:
        raise DomainError(f"geometric p must lie in (0, 1], got {p!r}")
    u = rng.uniform()
    if p == 1.0:
        return 1
    return max(1, int(math.ceil(math.log(u) / math.log1p(-p))))


def _normal(rng):
    # Box-Muller, cosine branch only: two uniforms per normal
    u1 = rng.uniform()
    u2 = rng.uniform()
    return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)


def _marsaglia_tsang(rng, shape):
    # shape >= 1; three uniforms per attempt whether or not it is accepted
    d = shape - 1.0 / 3.0
    c = 1.0 / math.sqrt(9.0 * d)
    while True:
        z = _normal(rng)
        u = rng.uniform()
        v = 1.0 + c * z
        if v <= 0.0:
            continue
        v = v * v * v
        if u < 1.0 - 0.0331 * (z * z) * (z * z):
            return d * v
        if math.log(u) < 0.5 * z * z + d * (1.0 - v + math.log(v)):
            return d * v


def gamma_sample(rng, shape, rate=1.0):
    """Gamma(shape, rate) draw.

    Integer shapes up to 32 are summed exponentials; other shapes use the
    Marsaglia-Tsang squeeze method, boosted by ``u**(1/shape)`` below 1.
    """
    if not shape > 0:
        raise DomainError(f"gamma shape must be positive, got {shape!r}")
    if not rate > 0:
        raise DomainError(f"gamma rate must be positive, got {rate!r}")
    if float(shape).is_integer() and shape <= 32:
        s = 0.0
        for _ in range(int(shape)):
            s += -math.log(rng.uniform())
        return s / rate
    if shape < 1.0:
        g = _marsaglia_tsang(rng, shape + 1.0)
        return g * rng.uniform() ** (1.0 / shape) / rate
    return _marsaglia_tsang(rng, float(shape)) / rate


class BernoulliSource:
    """Stream of {0, 1} draws with exact draw accounting.

    Subclasses implement ``_next``; ``draw`` validates and counts.
    """

    def __init__(self):
        self.draw_count = 0

    def _next(self):
        raise NotImplementedError

    def draw(self):
        x = self._next()
        if x != 0 and x != 1:
            raise DataError(f"Bernoulli source produced {x!r}, expected 0 or 1", value=x)
        self.draw_count += 1
        return int(x)

    def __iter__(self):
        while True:
            yield self.draw()


class SyntheticBernoulli(BernoulliSource):
    """Bern(p) driven by a uniform stream: 1 iff u < p."""

    def __init__(self, rng, p):
        super().__init__()
        if not 0.0 <= p <= 1.0:
            raise DomainError(f"Bernoulli p must lie in [0, 1], got {p!r}")
        self.rng = rng
        self.p = float(p)

    def _next(self):
        return 1 if self.rng.uniform() < self.p else 0


class ScriptedBernoulli(BernoulliSource):
    def __init__(self, values, cycle=False):
        super().__init__()
        self._values = [int(v) for v in values]
        self._cycle = cycle
        self._pos = 0

    def _next(self):
        if self._pos >= len(self._values):
            if not self._cycle or not self._values:
                raise DataError(f"scripted Bernoulli source exhausted after {self._pos} draws")
            self._pos = 0
        x = self._values[self._pos]
        self._pos += 1
        return x


def _parse_lines(lines, name, unit_interval):
    # yields floats; blank lines are skipped
    kind = "[0,1] value" if unit_interval else "0/1 value"
    for lineno, line in enumerate(lines, start=1):
        text = line.strip()
        if not text:
            continue
        try:
            v = float(text)
        except ValueError:
            raise DataError(f"{name}:{lineno}: malformed {kind}: {text!r}", line=lineno, value=text) from None
        if unit_interval:
            ok = 0.0 <= v <= 1.0
        else:
            ok = v == 0.0 or v == 1.0
        if not ok:
            raise DataError(f"{name}:{lineno}: expected a {kind}, got {text!r}", line=lineno, value=text)
        yield lineno, v


class LineBernoulliSource(BernoulliSource):
    """Newline-delimited 0/1 values from a file object or any iterable of lines."""

    def __init__(self, lines, name="<stdin>"):
        super().__init__()
        self.name = name
        self._it = _parse_lines(lines, name, unit_interval=False)

    def _next(self):
        try:
            _, v = next(self._it)
        except StopIteration:
            if self.draw_count == 0:
                raise DataError(f"{self.name}: input is empty") from None
            raise DataError(f"{self.name}: input exhausted after {self.draw_count} values") from None
        return int(v)


class UnitIntervalSource:
    """Stream of values in [0, 1]; out-of-range values are data errors."""

    def _next(self):
        raise NotImplementedError

    def draw(self):
        w = self._next()
        if not 0.0 <= w <= 1.0:
            raise DataError(f"unit-interval source produced {w!r}, outside [0, 1]", value=w)
        return w


class ScriptedUnitInterval(UnitIntervalSource):
    def __init__(self, values, cycle=False):
        self._values = [float(v) for v in values]
        self._cycle = cycle
        self._pos = 0

    def _next(self):
        if self._pos >= len(self._values):
            if not self._cycle or not self._values:
                raise DataError(f"scripted unit-interval source exhausted after {self._pos} draws")
            self._pos = 0
        w = self._values[self._pos]
        self._pos += 1
        return w


class LineUnitIntervalSource(UnitIntervalSource):
    def __init__(self, lines, name="<stdin>"):
        self.name = name
        self.count = 0
        self._it = _parse_lines(lines, name, unit_interval=True)

    def _next(self):
        try:
            _, w = next(self._it)
        except StopIteration:
            if self.count == 0:
                raise DataError(f"{self.name}: input is empty") from None
            raise DataError(f"{self.name}: input exhausted after {self.count} values") from None
        self.count += 1
        return w


def bernoulli_from_unit(source, rng):
    """One Bernoulli draw with mean E[W]: draw w, then u; return 1 iff u <= w."""
    w = source.draw()
    return 1 if rng.uniform() <= w else 0


class UnitIntervalBernoulli(BernoulliSource):
    """Bernoulli view of a [0, 1] source, one uniform per draw."""

    def __init__(self, source, rng):
        super().__init__()
        self.source = source
        self.rng = rng

    def _next(self):
        return bernoulli_from_unit(self.source, self.rng)


def synthetic_bernoulli(rng, p):
    return SyntheticBernoulli(rng, p)


def open_source(path, unit_interval=False, rng=None):
    """Bernoulli source reading ``path`` ('-' for stdin).

    With ``unit_interval`` the file holds [0, 1] values, turned into
    Bernoulli draws with ``rng``. Returns ``(source, handle)``; the caller
    closes ``handle`` (None for stdin).
    """
    if path == "-":
        handle, name = None, "<stdin>"
        lines = sys.stdin
    else:
        handle = open(path, "r", encoding="utf-8")
        name, lines = path, handle
    if unit_interval:
        if rng is None:
            raise DomainError("unit-interval mode needs a uniform stream")
        return UnitIntervalBernoulli(LineUnitIntervalSource(lines, name), rng), handle
    return LineBernoulliSource(lines, name), handle
