"""Linear green paths, FHO sequences and strict HN filtrations.

A linear green path is θ_t = θ0 + t·η with every coordinate of η positive.
Crossing times are exact rationals.  HN filtrations are built inside the
submodule lattice of the module, following the constructive recipe: take the
largest time at which some nonzero strict quotient vanishes, split off the
largest such quotient and recurse on the kernel.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InconsistencyError, PreconditionError
from .stability import OFF, Stability
from .strictcat import strict_flags

HN_UNIQUENESS_MAX_DIM = 5


@dataclass(frozen=True)
class GreenPathLinear:
    theta0: tuple[Fraction, ...]
    eta: tuple[Fraction, ...]

    def at(self, t) -> tuple[Fraction, ...]:
        t = Fraction(t)
        return tuple(a + t * b for a, b in zip(self.theta0, self.eta))


def validate_green(theta0, eta) -> GreenPathLinear:
    th = tuple(Fraction(x) for x in theta0)
    et = tuple(Fraction(x) for x in eta)
    if len(th) != len(et):
        raise PreconditionError(f"θ0 has {len(th)} coordinates but η has {len(et)}")
    for i, x in enumerate(et):
        if x <= 0:
            raise PreconditionError(f"η coordinate {i + 1} is {x}; every coordinate must be positive")
    return GreenPathLinear(th, et)


@dataclass(frozen=True)
class CrossingEvent:
    time: Fraction
    labels: tuple[int, ...]
    kind: str


@dataclass(frozen=True)
class FHOSequence:
    members: tuple[tuple[int, Fraction], ...]

    def bricks(self) -> list[int]:
        return [b for b, _ in self.members]


@dataclass(frozen=True)
class HNFiltration:
    module: int
    chain: tuple[int, ...]  # lattice indices M = M_0 ⊃ M_1 ⊃ ... ⊃ M_m = 0
    times: tuple[Fraction, ...]  # t_1 > t_2 > ... > t_m
    layers: tuple[int, ...]  # catalog classes of M_{k-1}/M_k
    refinements: tuple[tuple[int, ...], ...]  # per layer, lattice chain from M_k up to M_{k-1}
    refined_classes: tuple[tuple[int, ...], ...]


@dataclass
class ExtremalityReport:
    maximal: bool
    minimal: bool
    maximality_witnesses: dict = field(default_factory=dict)
    maximality_failures: list = field(default_factory=list)
    minimality_failures: list = field(default_factory=list)


class GreenPathEngine:
    """Green-path computations for one stability space."""

    def __init__(self, st: Stability, path: GreenPathLinear):
        self.st, self.path = st, path
        self.sc, self.cat = st.sc, st.cat
        if len(path.eta) != st.space.rank:
            raise PreconditionError(f"path lives in rank {len(path.eta)}, space has rank {st.space.rank}")
        for m in st.G:
            if m != st.zero and self._eta(m) <= 0:
                raise PreconditionError(f"η does not increase on {self.cat[m].name}; the path is not green here")
        self._schedule: list[CrossingEvent] | None = None
        self._fho: FHOSequence | None = None
        self._hn: dict[int, HNFiltration] = {}

    # evaluation -------------------------------------------------------------------------
    def _eta(self, m) -> Fraction:
        return sum((a * b for a, b in zip(self.path.eta, self.st.space.vec(m))), Fraction(0))

    def _theta0(self, m) -> Fraction:
        return sum((a * b for a, b in zip(self.path.theta0, self.st.space.vec(m))), Fraction(0))

    def vanishing_time(self, m: int) -> Fraction:
        return -self._theta0(m) / self._eta(m)

    def in_W(self, m: int, t) -> bool:
        if m == self.st.zero:
            return True
        th = self.path.at(t)
        return self.st.evaluate(th, m) == 0 and all(self.st.evaluate(th, c) <= 0 for c in self.st.ss[m])

    def in_W0(self, m: int, t) -> bool:
        th = self.path.at(t)
        return self.in_W(m, t) and all(self.st.evaluate(th, c) < 0 for c in self.st.proper_ss[m])

    # schedule -------------------------------------------------------------------------------
    def crossing_schedule(self, since=None) -> list[CrossingEvent]:
        """Wall crossings over the whole line, or only those at times >= ``since``."""
        if since is not None:
            return [e for e in self.crossing_schedule() if e.time >= since]
        if self._schedule is not None:
            return self._schedule
        by_t: dict[Fraction, list[int]] = {}
        for b in self.st.bricks():
            t = self.vanishing_time(b)
            if self.st.wall_membership(self.path.at(t), b) != OFF:
                by_t.setdefault(t, []).append(b)
        self._schedule = [CrossingEvent(t, tuple(sorted(by_t[t])), self.st.wall_kind_at(self.path.at(t)).kind)
                          for t in sorted(by_t)]
        return self._schedule

    def times(self) -> list[Fraction]:
        return [e.time for e in self.crossing_schedule()]

    # FHO ------------------------------------------------------------------------------------
    def fho_sequence(self, since=None) -> FHOSequence:
        if since is not None:
            return FHOSequence(tuple((b, t) for b, t in self.fho_sequence().members if t >= since))
        if self._fho is not None:
            return self._fho
        members = []
        for ev in self.crossing_schedule():
            c = self.st.classes_at(self.path.at(ev.time))
            for b in sorted(c.W0 - {self.st.zero}, key=lambda i: (self.cat[i].total_dim, i)):
                members.append((b, ev.time))
        seq = FHOSequence(tuple(members))
        bad = self.fho_violations(seq.members)
        if bad:
            b, t, b2, t2 = bad[0]
            raise InconsistencyError(
                f"forward orthogonality fails: {self.cat[b].name}@{t} → {self.cat[b2].name}@{t2}")
        self._fho = seq
        return seq

    def fho_violations(self, members) -> list[tuple]:
        out = []
        for b, t in members:
            for b2, t2 in members:
                if b != b2 and t <= t2 and self.sc.strict_hom_exists(b, b2):
                    out.append((b, t, b2, t2))
        return out

    # HN filtrations ---------------------------------------------------------------------------
    def _pick_quotient(self, lat, v, strict_in_m):
        """Largest vanishing time among nonzero strict quotients of v, and a
        maximal quotient vanishing then (ties: total dim, dimension vector)."""
        cands = []
        for a in strict_flags(lat, v, 0):
            if a == v or a not in strict_in_m:
                continue
            x = lat.cls(v, a)
            cands.append((self.vanishing_time(x), a, x))
        t1 = max(c[0] for c in cands)
        best = [c for c in cands if c[0] == t1]
        best.sort(key=lambda c: (-self.cat[c[2]].total_dim,
                                 tuple(-d for d in self.cat[c[2]].dim_vector), c[1]))
        return t1, best[0][1], best[0][2]

    def _refine(self, lat, u, v, t) -> list[int]:
        """Chain u = a_0 < ... < a_r = v with subquotients in W0(θ_t)."""
        x = lat.cls(v, u)
        if self.in_W0(x, t):
            return [u, v]
        for a in sorted(lat.interval(u, v), key=lambda a: (lat.dim(a), a)):
            if a in (u, v) or a not in strict_flags(lat, v, u):
                continue
            k = lat.cls(a, u)
            if self.st.evaluate(self.path.at(t), k) == 0 and self.in_W(k, t) and lat.in_G(v, a):
                return self._refine(lat, u, a, t)[:-1] + self._refine(lat, a, v, t)
        raise InconsistencyError(f"no W0 refinement for {self.cat[x].name} at t={t}")

    def hn_filtration(self, m: int) -> HNFiltration:
        if m in self._hn:
            return self._hn[m]
        if not self.cat[m].in_G:
            raise PreconditionError(f"{self.cat[m].name} is not in G")
        lat = self.cat.lattice(m)
        strict_in_m = set(strict_flags(lat))
        chain, times, layers = [lat.top], [], []
        v = lat.top
        while v != lat.bottom:
            t, a, x = self._pick_quotient(lat, v, strict_in_m)
            chain.append(a)
            times.append(t)
            layers.append(x)
            v = a
        refs, rcls = [], []
        for k, t in enumerate(times):
            r = self._refine(lat, chain[k + 1], chain[k], t)
            refs.append(tuple(r))
            rcls.append(tuple(lat.cls(r[i + 1], r[i]) for i in range(len(r) - 1)))
        hn = HNFiltration(m, tuple(chain), tuple(times), tuple(layers), tuple(refs), tuple(rcls))
        problems = self.check_hn(hn)
        if problems:
            raise InconsistencyError(f"HN filtration of {self.cat[m].name} invalid: {problems[0]}")
        self._hn[m] = hn
        return hn

    def check_hn(self, hn: HNFiltration) -> list[str]:
        lat = self.cat.lattice(hn.module)
        strict = set(strict_flags(lat))
        out = []
        for a in hn.chain:
            if a not in strict:
                out.append(f"chain member {a} is not strict")
        if any(hn.times[i] <= hn.times[i + 1] for i in range(len(hn.times) - 1)):
            out.append("times are not strictly decreasing")
        for x, t in zip(hn.layers, hn.times):
            if not self.in_W(x, t):
                out.append(f"layer {self.cat[x].name} not in W at t={t}")
        for cl, t in zip(hn.refined_classes, hn.times):
            for x in cl:
                if not self.in_W0(x, t):
                    out.append(f"refined layer {self.cat[x].name} not in W0 at t={t}")
        return out

    def hn_chains(self, m: int) -> list[tuple[tuple[int, ...], tuple[Fraction, ...]]]:
        """Every strict chain of m whose layers lie in W(θ_t) at strictly decreasing times."""
        lat = self.cat.lattice(m)
        strict = set(strict_flags(lat))
        out = []

        def rec(v, prev, chain, times):
            if v == lat.bottom:
                out.append((tuple(chain), tuple(times)))
                return
            for a in sorted(strict):
                if a == v or not lat.leq(a, v) or not lat.in_G(v, a):
                    continue
                x = lat.cls(v, a)
                t = self.vanishing_time(x)
                if prev is not None and t >= prev:
                    continue
                if self.in_W(x, t):
                    rec(a, t, chain + [a], times + [t])

        rec(lat.top, None, [lat.top], [])
        return out

    def hn_unique(self, m: int) -> bool:
        chains = self.hn_chains(m)
        hn = self.hn_filtration(m)
        return len(chains) == 1 and chains[0] == (hn.chain, hn.times)

    # membership ---------------------------------------------------------------------------
    def membership_via_hn(self, m: int, t0) -> dict[str, bool]:
        t0 = Fraction(t0)
        ts = self.hn_filtration(m).times
        got = {
            "in_P": all(t < t0 for t in ts),
            "in_Pbar": all(t <= t0 for t in ts),
            "in_Q": all(t > t0 for t in ts),
            "in_Qbar": all(t >= t0 for t in ts),
        }
        c = self.st.classes_at(self.path.at(t0))
        want = {"in_P": m in c.P, "in_Pbar": m in c.Pbar, "in_Q": m in c.Q, "in_Qbar": m in c.Qbar}
        if got != want:
            raise InconsistencyError(
                f"HN membership of {self.cat[m].name} at t={t0} disagrees with direct evaluation: {got} vs {want}")
        return got

    # extremality --------------------------------------------------------------------------
    def filtration_through(self, m: int, members) -> tuple[int, ...] | None:
        """A strict chain of m whose layers are members, with nonincreasing times from the top."""
        lat = self.cat.lattice(m)
        strict = set(strict_flags(lat))
        when: dict[int, list[Fraction]] = {}
        for b, t in members:
            when.setdefault(b, []).append(t)

        def rec(v, prev):
            if v == lat.bottom:
                return (v,)
            for a in sorted(strict):
                if a == v or not lat.leq(a, v) or not lat.in_G(v, a):
                    continue
                x = lat.cls(v, a)
                for t in when.get(x, ()):
                    if prev is None or t <= prev:
                        rest = rec(a, t)
                        if rest is not None:
                            return (v,) + rest
            return None

        return rec(lat.top, None)

    def candidate_times(self) -> list[Fraction]:
        ts = self.times()
        if not ts:
            return [Fraction(0)]
        out = [ts[0] - 1] + list(ts) + [ts[-1] + 1]
        out += [(a + b) / 2 for a, b in zip(ts, ts[1:])]
        return sorted(set(out))

    def fho_extremality_checks(self) -> ExtremalityReport:
        seq = self.fho_sequence()
        members = list(seq.members)
        names = set(seq.bricks())
        rep = ExtremalityReport(True, True)
        for b0 in self.st.bricks():
            if b0 in names:
                continue
            for tau in self.candidate_times():
                v = self.fho_violations(members + [(b0, tau)])
                v = [w for w in v if b0 in (w[0], w[2])]
                if v:
                    rep.maximality_witnesses[(b0, tau)] = v[0]
                else:
                    rep.maximal = False
                    rep.maximality_failures.append((b0, tau))
        for k, (b, t) in enumerate(members):
            rest = members[:k] + members[k + 1:]
            if self.filtration_through(b, rest) is not None:
                rep.minimal = False
                rep.minimality_failures.append((b, t))
        return rep


def crossing_schedule(st: Stability, path: GreenPathLinear) -> list[CrossingEvent]:
    """Crossings met when walking from θ0 (t = 0) onward."""
    return GreenPathEngine(st, path).crossing_schedule(since=0)


def fho_sequence(st: Stability, path: GreenPathLinear) -> FHOSequence:
    """FHO members met when walking from θ0 (t = 0) onward."""
    return GreenPathEngine(st, path).fho_sequence(since=0)
