"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines and timings.  Everything asserted here is exact rational arithmetic
unless the criterion itself is about a measured float (the counting
slope).
"""

import random
import time
from fractions import Fraction

from schottky.disks import contains_disk
from schottky.groups import sample_group
from schottky.heights import growth_base, height_matrix, upsilon_scan
from schottky.proj import INFINITY, ElementClass, Homography, ProjPoint, classify, delta
from schottky.words import Word


class Criterion:
    def __init__(self, number, label, budget_seconds):
        self.number = number
        self.label = label
        self.budget = budget_seconds

    def __enter__(self):
        self.start = time.monotonic()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.monotonic() - self.start
        status = "PASS" if exc_type is None else "FAIL"
        print(f"{status} criterion {self.number}: {self.label} ({elapsed:.2f}s)")
        if exc_type is None:
            assert elapsed < self.budget, (
                f"criterion {self.number} exceeded its {self.budget}s budget: {elapsed:.2f}s"
            )
        return False


def test_criterion_01_good_domain_axioms(sample_groups):
    with Criterion(1, "good-domain axioms on the worked group and three samples", 1.0):
        assert len(sample_groups) == 4
        for G in sample_groups:
            report = G.verify()
            assert report.all_passed, report.failures


def test_criterion_02_prefix_nesting(g5):
    with Criterion(2, "prefix-nesting of word disks, all pairs of lengths <= 4", 10.0):
        words = [w for n in (1, 2, 3, 4) for w in g5.enumerate_words(n)]
        disks = {w: g5.b_disk(w) for w in words}
        exceptions = 0
        for w1 in words:
            d1 = disks[w1]
            for w2 in words:
                if contains_disk(d1, disks[w2]) != w1.is_prefix_of(w2):
                    exceptions += 1
        assert exceptions == 0


def test_criterion_03_radius_decay(g5):
    with Criterion(3, "cover radius decay b*c^-n with c fitted at depth 2", 30.0):
        exps = {n: g5.limit_cover(n).max_radius_exponent for n in range(1, 9)}
        c_exp = exps[1] - exps[2]
        assert c_exp > 0  # c = p^c_exp > 1
        b_exp = exps[1] + c_exp
        for n in range(1, 9):
            assert exps[n] <= b_exp - c_exp * n  # radius <= b * c^-n, exactly


def test_criterion_04_reduction_round_trip(g5):
    with Criterion(4, "1000 random reduction round trips, lengths <= 6", 60.0):
        rng = random.Random(20250809)
        bases = []
        while len(bases) < 40:
            x = ProjPoint(Fraction(rng.randint(-600, 600), rng.randint(1, 120)))
            if g5.in_domain(x, interior=True):
                bases.append(x)
        failures = 0
        for _ in range(1000):
            length = rng.randint(1, 6)
            letters = []
            while len(letters) < length:
                l = rng.choice((1, -1, 2, -2))
                if letters and letters[-1] == -l:
                    continue
                letters.append(l)
            w = Word(letters)
            x0 = rng.choice(bases)
            got, y = g5.reduce_point(g5.word_homography(w).apply(x0))
            if got != w or y != x0:
                failures += 1
        assert failures == 0


def test_criterion_05_membership(g5):
    with Criterion(5, "membership: all words <= 6 accepted, 500 perturbed rejected", 60.0):
        errors = 0
        ident = g5.is_member(Homography.identity())
        assert ident and ident.word == Word(())
        for length, word, h in g5.iter_words_with_matrices(6):
            res = g5.is_member(h)
            assert res.member and res.word == word
        from schottky.errors import PointNearLimitSet

        rng = random.Random(1723)
        pool = [h for _, _, h in g5.iter_words_with_matrices(3)]
        rejected = 0
        while rejected < 500:
            g = rng.choice(pool)
            entries = list(g.entries)
            entries[rng.randrange(4)] += rng.choice((-2, -1, 1, 2))
            if entries[0] * entries[3] - entries[1] * entries[2] == 0:
                continue
            candidate = Homography(*entries)
            try:
                # reduction precondition: the base-point image must stay
                # clear of the limit set (perturbations can hit it exactly)
                g5.delta_to_limit(candidate.apply(INFINITY), 32)
            except PointNearLimitSet:
                continue
            try:
                if g5.is_member(candidate).member:
                    errors += 1
            except Exception:
                errors += 1
            rejected += 1
        assert errors == 0


def test_criterion_06_hyperbolicity(sample_groups):
    with Criterion(6, "every nontrivial word of length <= 5 is hyperbolic", 30.0):
        for G in sample_groups:
            for length, word, h in G.iter_words_with_matrices(5):
                assert classify(h, G.ctx) is ElementClass.HYPERBOLIC, (G.p, word)


def test_criterion_07_metric_invariance(ctx5):
    with Criterion(7, "chordal metric invariance under 200 integral unit-det maps", 5.0):
        rng = random.Random(77001)

        def rand_point():
            if rng.random() < 0.05:
                return INFINITY
            return ProjPoint(Fraction(rng.randint(-500, 500), rng.randint(1, 200)))

        checked = 0
        while checked < 200:
            a, b, c, d = (rng.randint(-30, 30) for _ in range(4))
            det = a * d - b * c
            if det == 0 or det % 5 == 0:
                continue
            g = Homography(a, b, c, d)
            x, y = rand_point(), rand_point()
            assert delta(g.apply(x), g.apply(y), ctx5) == delta(x, y, ctx5)
            checked += 1


def test_criterion_08_proper_constants(g5):
    with Criterion(8, "properness envelope at depth 6, bounded refit at depth 7", 120.0):
        fit6 = g5.fit_proper_constants(6)
        assert fit6.b > 0
        for length, t in g5.envelope_samples(6):
            assert Fraction(length) <= fit6.a + fit6.b * t  # exact rationals
        fit7 = g5.fit_proper_constants(7)
        da, db = abs(fit7.a - fit6.a), abs(fit7.b - fit6.b)
        print(f"  refit deltas: |da| = {float(da):.4f}, |db| = {float(db):.5f}")
        assert da <= 1 and db <= Fraction(1, 4)


def test_criterion_09_heights(g5):
    with Criterion(9, "height growth lemma, diagonal power law, counting slope", 120.0):
        c = growth_base(g5)
        for length, word, h in g5.iter_words_with_matrices(8):
            assert height_matrix(h) <= c ** (length + 1)
        for m in (5, 25):
            power = Homography.identity()
            for n in range(1, 6):
                power = power * Homography(1, 0, 0, m)
                assert height_matrix(power) == m**n
        scan = upsilon_scan(g5, 10)
        print(f"  counting slope = {scan.slope:.4f} (reference {scan.reference_exponent:.4f})")
        assert scan.slope >= 0.2


def test_criterion_10_commensurability_probe(g5):
    from schottky.geodesy import Verdict, double_coset_scan

    with Criterion(10, "coset probe: identity/inner stabilize, cross-multiplier grows", 300.0):
        ident = double_coset_scan(g5, Homography.identity(), g5, 8)
        assert ident.coset_counts == (1,) * 9
        assert ident.reverse_counts == (1,) * 9
        assert ident.verdict is Verdict.STABILIZED
        inner = double_coset_scan(g5, g5.generators[0], g5, 8)
        assert inner.coset_counts == (1,) * 9
        assert inner.verdict is Verdict.STABILIZED
        cross = double_coset_scan(g5, Homography.identity(), sample_group(5, 2, 4), 8)
        counts = cross.coset_counts
        print(f"  cross-multiplier counts: {counts}")
        assert all(a < b for a, b in zip(counts, counts[1:]))
        assert cross.verdict is Verdict.GROWING_NO_EVIDENCE


def test_criterion_11_translate_finiteness(g5):
    with Criterion(11, "translates meeting the fundamental domain at depth 6", 120.0):
        F = g5.fundamental_domain()
        scan = g5.intersecting_translates(F, F, 6)
        want = {Word(()), Word((1,)), Word((-1,)), Word((2,)), Word((-2,))}
        assert set(scan.words) == want
        assert scan.certified
