"""
Certified spectral radius of non-negative integer matrices
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
import scipy.sparse.linalg
import structlog
from scipy import sparse
from scipy.sparse.csgraph import connected_components
from scipy.sparse.linalg import ArpackNoConvergence

from core_entropy.core.config import settings

logger = structlog.get_logger(__name__)

# plain iterations tried before asking an eigensolver for a starting vector
WARM_START_AFTER = 200


@dataclass(frozen=True)
class SpectralBounds:
    """Spectral radius with Collatz-Wielandt bounds lower <= radius <= upper"""
    radius: float
    lower: float
    upper: float
    components: int
    nontrivial_components: int
    iterations: int
    method: str
    converged: bool = True

    @property
    def width(self) -> float:
        return self.upper - self.lower


def _perron_guess(block: sparse.csr_matrix, shift: float) -> Optional[np.ndarray]:
    """
    Approximate Perron vector of an irreducible block

    Large blocks use shift-invert around `shift`, an upper bound of the
    Perron root: no other eigenvalue lies as close to it.
    """
    size = block.shape[0]
    try:
        if size <= settings.DENSE_EIGEN_LIMIT:
            values, vectors = np.linalg.eig(block.toarray())
            vector = vectors[:, int(np.argmax(values.real))]
        else:
            ncv = min(size, 32)
            _, vectors = scipy.sparse.linalg.eigs(
                block.tocsc(), k=1, sigma=shift, which="LM", ncv=ncv, maxiter=10 * size
            )
            vector = vectors[:, 0]
    except ArpackNoConvergence as e:
        if e.eigenvectors is None or e.eigenvectors.shape[1] == 0:
            return None
        vector = e.eigenvectors[:, 0]
    except (np.linalg.LinAlgError, RuntimeError):
        # singular shift or failed factorization
        return None

    vector = np.abs(vector.real)
    top = vector.max()
    if not np.isfinite(top) or top <= 0:
        return None
    vector = vector / top
    return np.maximum(vector, 1e-12)


def collatz_wielandt(
    block: sparse.csr_matrix,
    tolerance: Optional[float] = None,
    max_iterations: Optional[int] = None,
) -> Tuple[float, float, int, str, bool]:
    """
    Bracket the Perron root of an irreducible non-negative block

    Iterates the primitive matrix B + I from a positive vector x; every
    iterate gives min(Bx/x) <= rho(B) <= max(Bx/x).

    Returns:
        (lower, upper, iterations, method, converged)
    """
    tolerance = tolerance or settings.SPECTRAL_TOLERANCE
    max_iterations = max_iterations or settings.SPECTRAL_MAX_ITERATIONS

    shifted = (block + sparse.identity(block.shape[0], format="csr")).tocsr()
    x = np.ones(block.shape[0])
    method = "collatz-wielandt"
    lower, upper = 0.0, np.inf
    warm_started = False

    for iteration in range(1, max_iterations + 1):
        y = shifted @ x
        ratios = y / x
        lower = max(lower, float(ratios.min()) - 1.0)
        upper = min(upper, float(ratios.max()) - 1.0)
        if upper - lower < tolerance:
            return lower, upper, iteration, method, True
        x = y / y.max()

        if iteration == WARM_START_AFTER and not warm_started:
            warm_started = True
            guess = _perron_guess(block, upper + 1e-8 * max(1.0, upper))
            if guess is not None:
                x = guess
                method = "collatz-wielandt+eigensolver"

    logger.warning(
        "spectral bounds did not converge",
        size=block.shape[0],
        lower=lower,
        upper=upper,
        iterations=max_iterations,
    )
    return lower, upper, max_iterations, method, False


def spectral_radius(
    matrix: sparse.spmatrix,
    tolerance: Optional[float] = None,
    max_iterations: Optional[int] = None,
) -> SpectralBounds:
    """
    Spectral radius as the maximum over strongly connected components

    Args:
        matrix: square non-negative integer matrix
        tolerance: width of the certified bracket
        max_iterations: iteration cap per component

    Returns:
        SpectralBounds; components that are single states or simple cycles are decided exactly
    """
    matrix = sparse.csr_matrix(matrix)
    size = matrix.shape[0]
    if size == 0:
        return SpectralBounds(0.0, 0.0, 0.0, 0, 0, 0, "empty")

    count, labels = connected_components(matrix, directed=True, connection="strong")
    sizes = np.bincount(labels, minlength=count)

    # single states: radius is the self-loop weight
    diagonal = matrix.diagonal()
    singles = sizes[labels] == 1
    best = float(diagonal[singles].max()) if singles.any() else 0.0
    lower, upper = best, best
    iterations, method, converged, nontrivial = 0, "components", True, 0

    for component in np.flatnonzero(sizes > 1):
        members = np.flatnonzero(labels == component)
        block = matrix[members][:, members]
        out_degrees = np.asarray(block.sum(axis=0)).ravel()
        if np.all(out_degrees == 1):
            lower, upper = max(lower, 1.0), max(upper, 1.0)
            continue
        nontrivial += 1
        lo, hi, used, how, ok = collatz_wielandt(block, tolerance, max_iterations)
        iterations += used
        converged = converged and ok
        if hi > upper or lo > lower:
            method = how
        lower, upper = max(lower, lo), max(upper, hi)

    radius = (lower + upper) / 2
    return SpectralBounds(
        radius=radius,
        lower=lower,
        upper=upper,
        components=int(count),
        nontrivial_components=nontrivial,
        iterations=iterations,
        method=method,
        converged=converged,
    )
