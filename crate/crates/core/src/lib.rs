//! Toolkit for bounded observers and algorithmic-information diagnostics.
//!
//! The crate models observers as systems that identify other systems by
//! finite binary strings. It provides:
//!
//! * [`bitstring`]: the `BitString` carrier type and fixed-width parameter
//!   encodings for systems described by degrees of freedom;
//! * [`complexity`]: computable upper-bound estimators for Kolmogorov
//!   complexity (LZ76 phrase statistics and an exact dictionary code);
//! * [`entropy`]: Shannon entropy, block-entropy rates, and synthetic
//!   bit-string sources;
//! * [`ensemble`]: observation matrices of identification strings;
//! * [`observer`]: finite-capacity observers, quantum/classical
//!   classification, and record-keeping;
//! * [`reality`]: concatenation curves, complexity-growth classification,
//!   and the element-of-reality verdict;
//! * [`calorimeter`]: an information-thermodynamic absorption experiment
//!   with Landauer heat accounting.
//!
//! Conventions: logarithms are base 2, quantities are bits, and every
//! stochastic routine takes an explicit seed driving a ChaCha8 generator, so
//! results are reproducible across runs and platforms.

pub mod bitstring;
pub mod calorimeter;
pub mod complexity;
pub mod ensemble;
pub mod entropy;
pub mod error;
pub mod observer;
pub mod reality;

pub use bitstring::{BitString, ParamField, SystemSpec};
pub use calorimeter::{
    absorb, landauer_heat, photon_entropy, run_experiment, EventOutcome, HeatEvent, HeatTrace,
    PhotonEvent, PhysicalEntropyLedger, RecordMode, RunReport, SaturationPolicy, SimConfig,
    BOLTZMANN_J_PER_K,
};
pub use complexity::{
    check_dof_bound, dictionary_code_length, estimate, lz76_bits, lz76_phrase_count,
    ComplexityEstimate, Estimator,
};
pub use ensemble::ObservationEnsemble;
pub use entropy::{
    block_entropy, entropy_rate_lz, entropy_rate_plugin, generate, is_zero_entropy_rate,
    shannon_entropy, zero_rate_check, MarkovChain, PluginRateReport, ProbabilityTable,
    ProcessKind, ProcessModel, ZeroRateCheck,
};
pub use error::{Error, Result};
pub use observer::{
    classify, relative_view, Classification, ObserverSIA, RecordOutcome, RelativeView,
    DEFAULT_CLOSENESS_FACTOR,
};
pub use reality::{
    brudno_ratio, build_curve, check_observer_bound, classify_growth, is_element_of_reality,
    BrudnoReport, ConcatenationCurve, CurvePoint, GrowthClass, GrowthFit, ModelFit,
    RealityConfig, RealityVerdict,
};
