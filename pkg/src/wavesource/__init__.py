"""Forward simulation and multi-frequency Fourier reconstruction for
elastic (Navier) and electromagnetic (Maxwell) source problems.

Boundary fields radiated by a compactly supported source are synthesized at
a lattice of probing frequencies; plane-wave probes of the measured traces
return the source's box Fourier coefficients, which are assembled and
resynthesized with quantified truncation and noise errors.
"""

from .geometry import (SurfaceQuadrature, BoxGrid, make_box_grid,
                       make_surface_quadrature, surface_integrate)
from .fourier import (VectorFieldSamples, FourierLattice, lattice_indices,
                      fourier_coefficient, fourier_synthesize, parseval_check)
from .bessel import bessel_jy, hankel1
from .kernels import (radial_kernel, fundamental_solution,
                      fundamental_derivatives, correction_derivatives,
                      tensor_correction_series)
from .operators import discrete_differential, interior_mask
from .sources import (VectorSource, BumpPoly, canonical_bump_source,
                      narrow_moment_source, gradient_current, make_source,
                      scaled, SOURCE_REGISTRY)
from .elastic import (ElasticMedium, ElasticFrequency, ElasticBoundaryRecord,
                      elastic_speeds, lattice_frequency, navier_green,
                      forward_displacement, elastic_boundary_data,
                      elastic_plane_wave, elastic_measurement_norm,
                      helmholtz_split, traction, source_grid)
from .maxwell import (EMBoundaryRecord, maxwell_green, forward_electric,
                      forward_magnetic, em_boundary_data, em_plane_wave,
                      nonradiating_source, CurlCurlSource, em_measurement_norm)
from .recover import (ProbeSpec, shear_frame, elastic_probe, em_probe,
                      synthesize_elastic_records, synthesize_em_records,
                      elastic_lattice_recover, em_lattice_recover,
                      static_mean_recover, static_records, oracle_lattice,
                      source_l2_norm, truncation_tail, reconstruct,
                      ReconstructionReport, EpsilonSummary, epsilon_summary)
from .experiment import (ExperimentConfig, ConfigError, load_config,
                         save_config, config_from_dict, add_noise,
                         run_stability_sweep, emit_outputs, StabilityReport,
                         report_to_csv, parse_csv, CSV_HEADER)

__version__ = "0.1.0"
