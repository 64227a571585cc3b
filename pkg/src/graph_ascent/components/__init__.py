"""
Компоненты локальной максимизации функций на графах.

Каждый компонент отвечает за одну задачу:
- graph_core - представление графа и генераторы семейств
- spectral - лапласиан, собственный базис, k-гладкие функции
- target - целевые плотности MH-блужданий
- walkers - ядра блужданий и цикл запуска
- kernel_factory - создание ядер по конфигурации
- analysis - теоретические оценки и точные оракулы
- exporter - форматы файлов
- plotting - SVG-графики (импортируется отдельно, тянет matplotlib)
"""

from .graph_core import (
    Graph,
    GraphGenerationError,
    GraphFormatError,
    DisconnectedGraphError,
    grid_graph,
    erdos_renyi,
    er_default_p,
    barabasi_albert,
    diameter,
    load_graph,
    save_graph,
)
from .spectral import (
    SpectralBasis,
    GraphFunction,
    CoherenceProfile,
    EigenSolverError,
    DegenerateInputError,
    laplacian,
    eigendecompose,
    spectral_basis,
    coherence_profile,
    synth_smooth,
    decompose,
    graph_fourier_transform,
    smoothness_energy,
)
from .target import TargetDensity, DensityUnderflowError, exponential_density, squared_density
from .walkers import (
    VanillaKernel,
    ExponentialKernel,
    LaplacianKernel,
    DegenerateProposalError,
    DegenerateCoherenceError,
    vanilla_row,
    exponential_row,
    laplacian_proposal_row,
    laplacian_row,
    laplacian_eps_row,
    run_walk,
    occupation_distribution,
    empirical_argmax,
)
from .kernel_factory import KernelFactory
from .analysis import (
    BoundInputs,
    HittingTimes,
    OracleSizeError,
    HittingSystemError,
    dominance_M,
    theta_exponential,
    theta_laplacian,
    tv_bound_exponential,
    tv_bound_laplacian,
    hitting_bound_exponential,
    hitting_bound_laplacian,
    highprob_hitting_bound,
    dense_kernel,
    stationary_distribution,
    tv_distance,
    exact_tv_curve,
    exact_expected_hitting,
)

__all__ = [
    'Graph', 'GraphGenerationError', 'GraphFormatError', 'DisconnectedGraphError',
    'grid_graph', 'erdos_renyi', 'er_default_p', 'barabasi_albert', 'diameter', 'load_graph', 'save_graph',
    'SpectralBasis', 'GraphFunction', 'CoherenceProfile', 'EigenSolverError', 'DegenerateInputError',
    'laplacian', 'eigendecompose', 'spectral_basis', 'coherence_profile', 'synth_smooth', 'decompose',
    'graph_fourier_transform', 'smoothness_energy',
    'TargetDensity', 'DensityUnderflowError', 'exponential_density', 'squared_density',
    'VanillaKernel', 'ExponentialKernel', 'LaplacianKernel',
    'DegenerateProposalError', 'DegenerateCoherenceError',
    'vanilla_row', 'exponential_row', 'laplacian_proposal_row', 'laplacian_row', 'laplacian_eps_row',
    'run_walk', 'occupation_distribution', 'empirical_argmax',
    'KernelFactory',
    'BoundInputs', 'HittingTimes', 'OracleSizeError', 'HittingSystemError', 'dominance_M',
    'theta_exponential', 'theta_laplacian', 'tv_bound_exponential', 'tv_bound_laplacian',
    'hitting_bound_exponential', 'hitting_bound_laplacian', 'highprob_hitting_bound',
    'dense_kernel', 'stationary_distribution', 'tv_distance', 'exact_tv_curve', 'exact_expected_hitting',
]
