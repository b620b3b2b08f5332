"""Smoke test for the stabcode extension module.

Build and install first:
    maturin build --release -m crates/python/Cargo.toml
    pip install target/wheels/stabcode-*.whl
"""

import math
from pathlib import Path

import stabcode

DATA = Path(__file__).resolve().parent.parent / "crates" / "core" / "data"


def main():
    code = stabcode.StabilizerCode.parse((DATA / "eight_three.stab").read_text())
    assert (code.n, code.m, code.k) == (8, 5, 3)
    assert code.is_valid()
    assert code.quantum_distance() == 3

    sf = code.standard_form()
    assert (sf.s, sf.k, sf.r) == (4, 3, 1)
    assert sorted(sf.qubit_permutation) == list(range(8))
    assert sf.generators().is_valid()

    classical = sf.extract()
    assert (classical.n, classical.k) == (7, 3)
    assert classical.min_distance() == 4
    assert sum(classical.weight_enumerator().values()) == 2**3

    report = sf.verify_phi()
    assert report["passed"], report["counterexamples"]

    mutated = stabcode.StabilizerCode.parse((DATA / "eight_three_mutated.stab").read_text())
    assert not mutated.is_valid()
    try:
        mutated.standard_form()
    except stabcode.StabcodeError:
        pass
    else:
        raise AssertionError("invalid code was standardized")

    phase_flip = stabcode.StabilizerCode(["XXI", "IXX"])
    assert phase_flip.standard_form().r == 0
    assert phase_flip.ensure_positive_r().standard_form().r >= 1

    five_two = stabcode.LinearCode(["10110", "01011"])
    codeword = five_two.encode("11")
    assert five_two.decode(codeword) == (codeword, "11")
    exact = five_two.bsc_success_exact(0.1)
    assert math.isclose(exact, 0.93312, abs_tol=1e-12)
    p, se = five_two.bsc_monte_carlo(0.1, trials=20000, seed=3)
    assert abs(p - exact) <= 4 * se
    assert five_two.bsc_monte_carlo(0.1, trials=20000, seed=3) == (p, se)

    try:
        five_two.bsc_success_exact(0.7)
    except ValueError:
        pass
    else:
        raise AssertionError("delta outside [0, 1/2] accepted")

    assert math.isclose(stabcode.binary_entropy(0.11), 0.499915958164528, abs_tol=1e-12)
    rows = stabcode.bound_curves("adversarial", 0.0, 0.5, 0.05)
    names = {name for _, name, _, _ in rows}
    assert "mrrw_adversarial" in names
    assert all(delta <= 0.25 for delta, name, _, _ in rows if name == "mrrw_adversarial")

    print("stabcode smoke test passed")


if __name__ == "__main__":
    main()
