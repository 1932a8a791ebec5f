"""Case-by-case verification that no coefficient pattern survives.

For each n >= 11 the obstruction is a nonzero resultant

    R_n = Res(B_{n-2}, B_{n-5}) != 0,

which rules out a common root of the two window polynomials in (0, 1) and
with it the only way the cofactor sequence could keep every dividend
coefficient equal to 1 at position n.  Certificates are produced mod p:
when p divides neither leading coefficient, Res(B_{n-2} mod p, B_{n-5} mod p)
equals R_n mod p, so a nonzero value mod p proves R_n != 0 exactly.  An n
whose leading coefficient dies mod p is *skipped* for that prime and must
wait for a later one; the first prime (in ascending order) that proves a
case is recorded as its witness.

Cases n = 5..10 are handled directly: one member of each pair is the zero
polynomial or has no root in (0, 1) at all, so no common root can exist.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Set, Tuple, Union

import numpy as np

from .bseq import b_init, b_step
from .modpoly import (
    CapacityError,
    IntPoly,
    ModPoly,
    Prime,
    resultant_prs,
    resultant_sylvester,
)

__all__ = [
    "BASE_CASE_WITNESS",
    "DEFAULT_PRIMES",
    "FIRST_RESULTANT_INDEX",
    "CheckpointMismatch",
    "BaseCase",
    "ClaimTable",
    "PrimePass",
    "VerifyReport",
    "skip_rule",
    "base_cases",
    "check_base_case",
    "resultant_mod",
    "verify_exact_small",
    "verify_range",
]

#: witness label for the directly-argued small cases
BASE_CASE_WITNESS = "case-analysis"

#: smallest n whose claim is certified by a resultant
FIRST_RESULTANT_INDEX = 11

#: primes that settle every case at least to n = 10^4
DEFAULT_PRIMES = (2, 3, 5, 7, 11, 13, 17)

Witness = Union[int, str]


class CheckpointMismatch(ValueError):
    """Checkpoint file disagrees with the requested run parameters."""


# --------------------------------------------------------------------------
# skip rule
# --------------------------------------------------------------------------


def skip_rule(n: int, p: int) -> bool:
    """True when the mod-p certificate is inadmissible at n.

    Inadmissible means p divides the leading coefficient of B_{n-2} or
    B_{n-5}; reduction then drops the degree and the reduced resultant no
    longer determines R_n mod p.  By the leading-coefficient law the even
    member always leads with +-1, and the odd member 2j+1 leads with
    +-(j-2), giving the closed form

        n = 2k    skips iff  k ≡ 5 (mod p)
        n = 2k+1  skips iff  k ≡ 3 (mod p).
    """
    if n < FIRST_RESULTANT_INDEX:
        raise ValueError(f"skip rule applies from n = {FIRST_RESULTANT_INDEX}, got {n}")
    if n % 2 == 0:
        return (n // 2 - 5) % p == 0
    return ((n - 1) // 2 - 3) % p == 0


# --------------------------------------------------------------------------
# claim table
# --------------------------------------------------------------------------


@dataclass
class ClaimTable:
    """Proof status for every case 5 <= n <= max_n.

    witness[n] is the ascending-first prime that proved n, or
    BASE_CASE_WITNESS for the directly-argued small cases; n absent means
    still unproven.  A recorded witness is never overwritten, which is what
    makes sequential and parallel runs agree.
    """

    max_n: int
    witness: Dict[int, Witness] = field(default_factory=dict)

    def __post_init__(self):
        if self.max_n < 5:
            raise ValueError("claims start at n = 5")

    def mark(self, n: int, w: Witness) -> None:
        if not 5 <= n <= self.max_n:
            raise ValueError(f"n = {n} outside claim range 5..{self.max_n}")
        self.witness.setdefault(n, w)

    def is_proven(self, n: int) -> bool:
        return n in self.witness

    def unproven(self) -> List[int]:
        return [n for n in range(5, self.max_n + 1) if n not in self.witness]

    def all_proven(self) -> bool:
        return len(self.witness) == self.max_n - 4

    def proved_up_to(self) -> int:
        """Largest m with every case 5..m proven (4 if n=5 is open)."""
        m = 5
        while m <= self.max_n and m in self.witness:
            m += 1
        return m - 1


# --------------------------------------------------------------------------
# base cases n = 5..10
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class BaseCase:
    """One directly-argued case: the pair (B_{n-2}, B_{n-5}) plus the member
    that visibly has no root in the open interval (0, 1)."""

    n: int
    pair: Tuple[IntPoly, IntPoly]
    no_root_witness: IntPoly


# which member of the pair carries the no-root argument (0 = B_{n-2})
_BASE_WITNESS_SLOT = {5: 1, 6: 0, 7: 1, 8: 0, 9: 0, 10: 0}


def base_cases() -> List[BaseCase]:
    """The six small cases, with exact window polynomials."""
    w = b_init()
    polys = {m: w.poly(m) for m in range(5)}
    for _ in range(4):  # extend through B_8
        w = b_step(w)
        polys[w.index] = w.newest()
    out = []
    for n in range(5, 11):
        pair = (polys[n - 2], polys[n - 5])
        out.append(BaseCase(n, pair, pair[_BASE_WITNESS_SLOT[n]]))
    return out


def check_base_case(case: BaseCase, grid_points: int = 512) -> Tuple[bool, float]:
    """Numerically re-check the witness polynomial has no root in (0, 1).

    Two independent looks: numpy root-finding filtered to real roots inside
    the open interval, and a positivity scan on an interior grid.  Returns
    (ok, smallest grid value).
    """
    poly = case.no_root_witness
    cs = list(poly.coeffs)
    if len(cs) > 1:
        roots = np.roots(cs[::-1])
        for r in roots:
            if abs(r.imag) < 1e-9 and 1e-9 < r.real < 1 - 1e-9:
                return False, 0.0
    ts = np.linspace(0.0, 1.0, grid_points + 2)[1:-1]
    vals = sum(c * ts**k for k, c in enumerate(cs)) if cs else np.zeros_like(ts)
    lo = float(np.min(vals))
    return lo > 0.0, lo


# --------------------------------------------------------------------------
# per-prime computation
# --------------------------------------------------------------------------


def _gcd2(f: int, g: int) -> int:
    """gcd in GF(2)[x], polynomials encoded bit k <-> coeff of x^k."""
    while g:
        dg = g.bit_length() - 1
        df = f.bit_length() - 1
        while df >= dg:
            f ^= g << (df - dg)
            df = f.bit_length() - 1
        f, g = g, f
    return f


def _run_chunk(p: int, ns: Sequence[int]) -> List[int]:
    """Decide the cases in ns for prime p; returns those proved.

    Walks the window B_0, B_1, ... mod p once, up through max(ns); at each
    requested n the pair (B_{n-2}, B_{n-5}) is read off *before* the step
    that would evict B_{n-5}.  Over GF(2) the polynomials live as bitmask
    integers and a nonzero resultant is equivalent to gcd = 1.
    """
    if not ns:
        return []
    ns = sorted(ns)
    hi = ns[-1]
    want = set(ns)
    proved: List[int] = []

    if p == 2:
        w = [1, 0, 3, 0, 7]  # B_0..B_4 as bitmasks
        n = 4
        while n < hi:
            n += 1
            b2, b5 = w[3], w[0]  # B_{n-2}, B_{n-5}
            if n in want and b2 and b5 and _gcd2(b2, b5) == 1:
                proved.append(n)
            w = w[1:] + [1 ^ (b2 << 1) ^ b5]
        return proved

    prime = Prime(p)
    w = [
        np.array(c, dtype=np.int64) % p
        for c in ([1], [0], [1, -1], [0], [1, -1, 1])
    ]
    n = 4
    while n < hi:
        n += 1
        b2, b5 = w[3], w[0]
        if n in want:
            f = ModPoly(prime, b2)
            g = ModPoly(prime, b5)
            if not f.is_zero() and not g.is_zero() and resultant_prs(f, g) != 0:
                proved.append(n)
        new = np.zeros(max(len(b2) + 1, len(b5), 1), dtype=np.int64)
        new[0] = 1
        new[1 : len(b2) + 1] -= b2
        new[: len(b5)] -= b5
        np.remainder(new, p, out=new)
        k = len(new)
        while k > 0 and new[k - 1] == 0:
            k -= 1
        w = w[1:] + [new[:k]]
    return proved


def _chunk_by_weight(ns: Sequence[int], k: int) -> List[List[int]]:
    """Split a sorted case list into <= k contiguous chunks of roughly equal
    total cost, using the n^2 cost model of one resultant."""
    total = sum(n * n for n in ns)
    target = total / k if k > 0 else total
    chunks: List[List[int]] = []
    cur: List[int] = []
    acc = 0
    for n in ns:
        cur.append(n)
        acc += n * n
        if acc >= target and len(chunks) < k - 1:
            chunks.append(cur)
            cur = []
            acc = 0
    if cur:
        chunks.append(cur)
    return chunks


def _compute_pass(p: int, ns: List[int], jobs: int) -> List[int]:
    if not ns:
        return []
    if jobs <= 1 or len(ns) < 32:
        return _run_chunk(p, ns)
    chunks = _chunk_by_weight(ns, jobs)
    proved: List[int] = []
    with ProcessPoolExecutor(max_workers=min(jobs, len(chunks))) as pool:
        for part in pool.map(_run_chunk, [p] * len(chunks), chunks):
            proved.extend(part)
    return sorted(proved)


def resultant_mod(n: int, prime: Prime) -> int:
    """Res(B_{n-2} mod p, B_{n-5} mod p), the reduced-pair resultant.

    Equals R_n mod p exactly when skip_rule(n, p) is False; at a skipped n
    the value is still well-defined but certifies nothing.  Single-case
    diagnostic path — the batch driver amortizes the window walk instead.
    """
    if n < FIRST_RESULTANT_INDEX:
        raise ValueError(f"resultants start at n = {FIRST_RESULTANT_INDEX}")
    w = b_init(prime)
    while w.index < n - 2:
        w = b_step(w)
    f = w.poly(n - 2)
    g = w.poly(n - 5)
    if f.is_zero() or g.is_zero():
        return 0
    return resultant_prs(f, g)


def verify_exact_small(lo: int = 11, hi: int = 60) -> Dict[int, int]:
    """Exact integer R_n for lo <= n <= hi via the Sylvester determinant.

    Oracle path: independent of the mod-p machinery (Bareiss elimination on
    exact integers).  Capped to n <= 60 where the determinant stays cheap.
    """
    if not (FIRST_RESULTANT_INDEX <= lo <= hi <= 60):
        raise CapacityError(f"exact range must sit inside 11..60, got {lo}..{hi}")
    w = b_init()
    polys: Dict[int, IntPoly] = {m: w.poly(m) for m in range(5)}
    while w.index < hi - 2:
        w = b_step(w)
        polys[w.index] = w.newest()
    return {
        n: resultant_sylvester(polys[n - 2], polys[n - 5])
        for n in range(lo, hi + 1)
    }


# --------------------------------------------------------------------------
# checkpointing
# --------------------------------------------------------------------------


class _Checkpoint:
    """Append-only progress file.

    Layout: a parameter header, then one ``n proven <witness>`` line per
    settled case, with ``# pass p=<p> complete`` markers after each finished
    prime.  A resumed run must present identical max_n and primes.
    """

    def __init__(self, path: str, max_n: int, primes: Sequence[int]):
        self.path = path
        self.max_n = max_n
        self.primes = [int(p) for p in primes]
        self._persisted: Set[int] = set()

    def _header(self) -> List[str]:
        return [
            "# verify-resultants checkpoint v1",
            f"max_n={self.max_n}",
            "primes=" + ",".join(str(p) for p in self.primes),
            "# n status witness",
        ]

    def load_into(self, table: ClaimTable) -> Set[int]:
        """Read the file (creating it if absent); returns completed primes."""
        if not os.path.exists(self.path):
            with open(self.path, "w") as fh:
                fh.write("\n".join(self._header()) + "\n")
            return set()
        with open(self.path) as fh:
            lines = [ln.rstrip("\n") for ln in fh]
        header = self._header()
        if lines[: len(header)] != header:
            raise CheckpointMismatch(
                f"{self.path} was written for different parameters "
                f"(wanted max_n={self.max_n}, primes={self.primes})"
            )
        done: Set[int] = set()
        for ln in lines[len(header) :]:
            if not ln.strip():
                continue
            if ln.startswith("# pass p="):
                done.add(int(ln[len("# pass p=") : -len(" complete")]))
                continue
            parts = ln.split()
            if len(parts) != 3 or parts[1] != "proven":
                raise CheckpointMismatch(f"unreadable checkpoint line: {ln!r}")
            n = int(parts[0])
            w: Witness = parts[2] if parts[2] == BASE_CASE_WITNESS else int(parts[2])
            if isinstance(w, int) and w not in self.primes:
                raise CheckpointMismatch(f"witness {w} not in prime list: {ln!r}")
            table.mark(n, w)
            self._persisted.add(n)
        return done

    def persist(self, table: ClaimTable, completed_prime: Optional[int] = None):
        new = sorted(n for n in table.witness if n not in self._persisted)
        with open(self.path, "a") as fh:
            for n in new:
                fh.write(f"{n} proven {table.witness[n]}\n")
            if completed_prime is not None:
                fh.write(f"# pass p={completed_prime} complete\n")
        self._persisted.update(new)


# --------------------------------------------------------------------------
# driver
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PrimePass:
    prime: int
    candidates: int  # unproven cases entering the pass
    skipped: int
    computed: int
    proved: int
    first_unproven_after: Optional[int]
    proved_up_to_after: int
    duration_seconds: float


@dataclass
class VerifyReport:
    max_n: int
    primes: List[int]
    table: ClaimTable
    passes: List[PrimePass]
    duration_seconds: float

    def all_proven(self) -> bool:
        return self.table.all_proven()

    def unproven(self) -> List[int]:
        return self.table.unproven()

    def milestones(self) -> List[str]:
        out = []
        for ps in self.passes:
            first = "none" if ps.first_unproven_after is None else str(ps.first_unproven_after)
            out.append(
                f"p={ps.prime}: computed {ps.computed} resultants, proved "
                f"{ps.proved} new cases ({ps.skipped} skipped); first unproven "
                f"now {first}; proved up to {ps.proved_up_to_after}"
            )
        return out

    def to_dict(self) -> dict:
        return {
            "max_n": self.max_n,
            "primes": list(self.primes),
            "all_proven": self.all_proven(),
            "unproven": self.unproven(),
            "witnesses": {str(n): self.table.witness[n] for n in sorted(self.table.witness)},
            "passes": [
                {
                    "prime": ps.prime,
                    "candidates": ps.candidates,
                    "skipped": ps.skipped,
                    "computed": ps.computed,
                    "proved": ps.proved,
                    "first_unproven_after": ps.first_unproven_after,
                    "proved_up_to_after": ps.proved_up_to_after,
                    "duration_seconds": ps.duration_seconds,
                }
                for ps in self.passes
            ],
            "duration_seconds": self.duration_seconds,
        }


def verify_range(
    max_n: int,
    primes: Sequence[int] = DEFAULT_PRIMES,
    jobs: int = 1,
    checkpoint: Optional[str] = None,
    progress: Optional[Callable[[str], None]] = None,
) -> VerifyReport:
    """Settle every case 5 <= n <= max_n with the given ascending primes.

    One pass per prime: resultants are computed only for cases no earlier
    prime settled and the skip rule admits, so later (more expensive) primes
    see only the stragglers.  With jobs > 1 each pass is split into
    contiguous n-ranges balanced by the n^2 cost model; passes themselves
    are barriers, so witnesses match the sequential run exactly.
    """
    t0 = time.perf_counter()
    if max_n < 5:
        raise ValueError("max_n must be at least 5")
    plist = [int(p) for p in primes]
    for q in plist:
        Prime(q)  # validates primality and range
    if plist != sorted(set(plist)):
        raise ValueError("primes must be strictly ascending")

    table = ClaimTable(max_n)
    done_passes: Set[int] = set()
    ckpt: Optional[_Checkpoint] = None
    if checkpoint is not None:
        ckpt = _Checkpoint(checkpoint, max_n, plist)
        done_passes = ckpt.load_into(table)

    for case in base_cases():
        if case.n > max_n or table.is_proven(case.n):
            continue
        ok, _ = check_base_case(case)
        if not ok:
            raise ArithmeticError(f"base case n={case.n} failed its no-root check")
        table.mark(case.n, BASE_CASE_WITNESS)
    if ckpt is not None:
        ckpt.persist(table)

    passes: List[PrimePass] = []
    for p in plist:
        if p in done_passes:
            continue
        t1 = time.perf_counter()
        cands = [n for n in table.unproven() if n >= FIRST_RESULTANT_INDEX]
        ns = [n for n in cands if not skip_rule(n, p)]
        proved = _compute_pass(p, ns, jobs)
        for n in proved:
            table.mark(n, p)
        rest = table.unproven()
        ps = PrimePass(
            prime=p,
            candidates=len(cands),
            skipped=len(cands) - len(ns),
            computed=len(ns),
            proved=len(proved),
            first_unproven_after=rest[0] if rest else None,
            proved_up_to_after=table.proved_up_to(),
            duration_seconds=time.perf_counter() - t1,
        )
        passes.append(ps)
        if ckpt is not None:
            ckpt.persist(table, completed_prime=p)
        if progress is not None:
            first = "none" if ps.first_unproven_after is None else str(ps.first_unproven_after)
            progress(
                f"p={p}: proved {ps.proved}/{ps.computed} computed "
                f"({ps.skipped} skipped) in {ps.duration_seconds:.1f}s; "
                f"first unproven now {first}"
            )

    return VerifyReport(
        max_n=max_n,
        primes=plist,
        table=table,
        passes=passes,
        duration_seconds=time.perf_counter() - t0,
    )
