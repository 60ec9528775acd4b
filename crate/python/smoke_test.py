"""Smoke test for the partnorm extension module.

Build and install first:

    pip install --no-build-isolation ./crates/python
    python3 python/smoke_test.py
"""

import math
from fractions import Fraction

import partnorm


def main():
    lam = partnorm.Partition([4, 3, 3, 1])
    assert lam.parts() == [4, 3, 3, 1]
    assert (lam.size, lam.length, lam.norm, lam.rank) == (11, 4, 36, 0)
    assert lam.frequency_notation() == "<1 3^2 4>"
    assert str(lam) == "(4,3,3,1)"
    assert lam.delete_part(3) == partnorm.Partition([4, 3, 1])
    assert len({lam, partnorm.Partition([1, 3, 4, 3])}) == 1

    assert len(partnorm.enumerate(4)) == 5
    assert [str(p) for p in partnorm.enumerate(7, "rr")] == ["(7)", "(6,1)", "(5,2)"]
    try:
        partnorm.enumerate(3, "nosuch")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown class accepted")

    value, witnesses = partnorm.max_norm(10)
    assert value == 36
    assert sorted(str(w) for w in witnesses) == ["(3,3,2,2)", "(4,3,3)"]
    assert partnorm.max_norm(10, "rr")[0] == 24
    assert partnorm.brute_extremal_norm(10, "rr")[0] == 24
    assert partnorm.min_size_for_norm(12)[0] == 7

    assert partnorm.partition_count(100) == 190569292
    assert partnorm.norm_sum(4) == 14
    assert partnorm.lehmer_sum(3) == Fraction(11, 6)
    assert partnorm.lehmer_sum_distinct(3) == Fraction(5, 6)
    total = sum(partnorm.macmahon_coeff(p) for p in partnorm.enumerate(12))
    assert total == 1

    draws = partnorm.sample_macmahon(8, 20, seed=7)
    assert draws == partnorm.sample_macmahon(8, 20, seed=7)
    assert all(d.size == 8 for d in draws)

    z = partnorm.partition_zeta_product("primes", 2.0, 1e-7)
    assert abs(z.value - math.pi ** 2 / 6) <= z.tail_bound + 1e-12
    assert partnorm.nuclear_zeta_dirichlet(3.0, 100).tail_bound is None
    exact = partnorm.fixed_length_zeta_exact(2, 2)
    assert (exact.coeff, exact.power, str(exact)) == (Fraction(7, 360), 4, "7/360 * pi^4")
    assert abs(float(exact) - partnorm.fixed_length_zeta(2.0, 2).value) < 1e-12
    golden = partnorm.golden_ratio_series(13)
    assert abs(golden.value - (1 + math.sqrt(5)) / 2 * math.pi / 5) < 1e-12
    assert partnorm.multiplicative_partitions(12) == 4
    assert partnorm.phi_partition(partnorm.Partition([2, 2])) == 2

    reports = partnorm.run_verify("fine", n_max=10)
    assert len(reports) == 11 and all(r["status"] == "ExactPass" for r in reports)
    flagged = [r for r in partnorm.run_verify("extremal-rr", n_max=12) if r["known_issue"]]
    assert flagged and not any(r["failed"] for r in flagged)

    print("partnorm", partnorm.__version__, "smoke test passed")


if __name__ == "__main__":
    main()
