import numpy as np
import pytest

from qotto.linalg import (
    I2,
    I4,
    SIGMA_MINUS,
    SIGMA_PLUS,
    Superoperator,
    kron,
    matexp,
    partial_trace,
    unvec,
    vec,
    vectorize_generator,
)
from conftest import random_density_matrix


def taylor_expm(m: np.ndarray, terms: int = 30) -> np.ndarray:
    """Independent oracle: plain truncated Taylor series."""
    out = np.eye(m.shape[0], dtype=complex)
    term = np.eye(m.shape[0], dtype=complex)
    for k in range(1, terms + 1):
        term = term @ m / k
        out = out + term
    return out


class TestKron:
    def test_identity(self):
        assert np.array_equal(kron(I2, I2), I4)

    def test_diagonal(self):
        got = kron(np.diag([0.0, 1.0]), I2)
        assert np.allclose(got, np.diag([0.0, 0.0, 1.0, 1.0]))

    def test_raising_lowering_product(self):
        # sigma_plus = |e><g|, sigma_minus = |g><e| in (down, up) ordering:
        # expanding the definition by hand puts the single 1 at row
        # (up down) = 2, column (down up) = 1.
        got = kron(SIGMA_PLUS, SIGMA_MINUS)
        expected = np.zeros((4, 4), dtype=complex)
        expected[2, 1] = 1.0
        assert np.array_equal(got, expected)

    def test_entry_formula(self, rng):
        a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        b = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        got = kron(a, b)
        for i in range(2):
            for j in range(2):
                for k in range(3):
                    for l in range(3):
                        assert got[3 * i + k, 3 * j + l] == pytest.approx(
                            a[i, j] * b[k, l], abs=1e-15
                        )


class TestMatexp:
    def test_zero(self):
        assert np.allclose(matexp(np.zeros((3, 3))), np.eye(3), atol=1e-14)

    def test_diagonal(self):
        got = matexp(np.diag([1.0, -2.0]).astype(complex))
        assert np.allclose(got, np.diag([np.e, np.exp(-2.0)]), rtol=1e-12)

    def test_taylor_oracle(self, rng):
        for _ in range(20):
            m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
            m = m / np.linalg.norm(m, 2)
            got = matexp(m)
            expected = taylor_expm(m)
            assert np.max(np.abs(got - expected)) <= 1e-10

    def test_commuting_product(self, rng):
        for _ in range(10):
            d1 = np.diag(rng.normal(size=4) + 1j * rng.normal(size=4))
            d2 = np.diag(rng.normal(size=4) + 1j * rng.normal(size=4))
            lhs = matexp(d1 + d2)
            rhs = matexp(d1) @ matexp(d2)
            assert np.max(np.abs(lhs - rhs)) <= 1e-9

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            matexp(np.zeros((2, 3)))


class TestVec:
    def test_roundtrip(self, rng):
        m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        assert np.array_equal(unvec(vec(m)), m)

    def test_column_major_identity(self, rng):
        # vec(A rho B) = (B^T kron A) vec(rho)
        a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        b = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        rho = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        lhs = vec(a @ rho @ b)
        rhs = kron(b.T, a) @ vec(rho)
        assert np.allclose(lhs, rhs, atol=1e-12)


class TestVectorizeGenerator:
    def test_zero(self):
        gen = vectorize_generator(np.zeros((2, 2)))
        assert np.max(np.abs(gen.matrix)) == 0.0
        assert gen.n == 2 and gen.dim == 4

    def test_closed_system_coherence_rotation(self):
        omega = 1.7
        gen = vectorize_generator(np.diag([0.0, omega]).astype(complex))
        rho = np.array([[0.5, 0.25], [0.25, 0.5]], dtype=complex)
        t = 0.9
        out = unvec(matexp(gen.matrix * t) @ vec(rho))
        assert abs(out[0, 0] - 0.5) <= 1e-12 and abs(out[1, 1] - 0.5) <= 1e-12
        assert abs(out[0, 1] - 0.25 * np.exp(1j * omega * t)) <= 1e-10

    def test_decay_rate(self):
        # Expanding the dissipator by hand: for rho = |e><e| the excited
        # population decays at exactly the jump rate.
        gamma = 0.37
        gen = vectorize_generator(np.zeros((2, 2)), [(gamma, SIGMA_MINUS)])
        rho = np.diag([0.0, 1.0]).astype(complex)
        drho = gen.apply(rho)
        assert abs(drho[1, 1].real - (-gamma)) <= 1e-14
        assert abs(drho[0, 0].real - gamma) <= 1e-14

    def test_trace_preserving_rows(self, rng):
        for _ in range(25):
            h = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
            h = (h + h.conj().T) / 2
            jumps = [
                (rng.random(), rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
                for _ in range(3)
            ]
            gen = vectorize_generator(h, jumps)
            row = vec(np.eye(4)) @ gen.matrix
            assert np.max(np.abs(row)) <= 1e-12

    def test_rejects_negative_rate(self):
        with pytest.raises(ValueError):
            vectorize_generator(np.zeros((2, 2)), [(-0.1, SIGMA_MINUS)])

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError):
            vectorize_generator(np.array([[0.0, 1.0], [0.0, 0.0]]))


class TestGKSLProperties:
    def test_cptp_battery(self, rng):
        # trace, Hermiticity and positivity are preserved by exp(L t) for
        # randomly assembled generators over the whole time range of interest.
        for _ in range(40):
            n = rng.choice([2, 4])
            h = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            h = (h + h.conj().T) / 2
            jumps = [
                (rng.random(), rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
                for _ in range(2)
            ]
            gen = vectorize_generator(h, jumps)
            rho = random_density_matrix(rng, n)
            for t in (0.0, 0.5, 50.0):
                out = unvec(matexp(gen.matrix * t) @ vec(rho))
                assert abs(np.trace(out).real - 1.0) <= 1e-9
                assert np.max(np.abs(out - out.conj().T)) <= 1e-9
                eigs = np.linalg.eigvalsh((out + out.conj().T) / 2)
                assert eigs.min() >= -1e-8


class TestSuperoperator:
    def test_apply_shape_check(self):
        gen = vectorize_generator(np.zeros((2, 2)))
        with pytest.raises(ValueError):
            gen.apply(np.zeros((4, 4)))

    def test_apply_matches_matrix(self, rng):
        h = np.diag([0.0, 2.0]).astype(complex)
        gen = vectorize_generator(h, [(0.3, SIGMA_MINUS)])
        rho = random_density_matrix(rng, 2)
        assert np.allclose(vec(gen.apply(rho)), gen.matrix @ vec(rho))


class TestPartialTrace:
    def test_product_state(self, rng):
        a = random_density_matrix(rng, 2)
        b = random_density_matrix(rng, 3)
        c = random_density_matrix(rng, 2)
        full = kron(kron(a, b), c)
        assert np.allclose(partial_trace(full, (2, 3, 2), 0), a, atol=1e-12)
        assert np.allclose(partial_trace(full, (2, 3, 2), 1), b, atol=1e-12)
        assert np.allclose(partial_trace(full, (2, 3, 2), 2), c, atol=1e-12)

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            partial_trace(np.eye(4), (2, 4), 0)
