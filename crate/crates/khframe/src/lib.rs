//! Strong-field laser-atom numerics in the oscillating (Kramers-Henneberger)
//! frame.
//!
//! In the frame that rides the quiver motion of a free electron, a linearly
//! polarized laser turns the static atomic potential into a rigidly
//! oscillating one, `V(x + a(t), y, z)`. Expanding that translation in
//! harmonics of the drive gives a static dressed well plus an infinite set of
//! harmonic couplings, and in the tunneling regime (Keldysh parameter below
//! one) low-order perturbation theory in those couplings is a controlled
//! approximation. This crate implements that machinery end to end:
//!
//! - [`units`]: natural-unit constants, laser/atom parameter structs, Keldysh
//!   and ponderomotive bookkeeping;
//! - [`special`]: Chebyshev/Legendre/Bessel kernels (generic over the scalar
//!   type) and the quadratures everything else is built on;
//! - [`dressed`]: harmonic components v_k of the oscillating potential, their
//!   closed forms for the Coulomb case, and reconstruction checks;
//! - [`hydrogen`]: hydrogen-like bound states, deformation-induced level
//!   shifts, continuum dipole elements, and the wavefunction-rigidity
//!   amplitude;
//! - [`rates`]: above-threshold ionization rates (closed form and golden-rule
//!   momentum-shell integration) and harmonic Rabi frequencies;
//! - [`harmonics`]: odd-harmonic emission amplitudes, cutoff law, damped
//!   dipole signals and Rabi-split line spectra;
//! - [`signal`]: FFT power spectra, peak extraction, linewidth measurement;
//! - [`twolevel`]: the exactly dressable driven two-level reference model.
//!
//! Everything works in natural units (energies in eV, lengths in 1/eV);
//! SI-facing conversions live in [`units`] only.

pub mod dressed;
pub mod error;
pub mod harmonics;
pub mod hydrogen;
pub mod rates;
pub mod signal;
pub mod special;
pub mod twolevel;
pub mod units;

pub use error::{Error, Result};

/// Scalar type used throughout the physics modules.
///
/// The special-function kernels in [`special`] are generic over
/// `num_traits::Float`; the physics layers pin this alias because their
/// tolerances and tabulated constants only make sense in double precision.
pub type Real = f64;

/// Complex scalar matching [`Real`].
pub type Complex = num_complex::Complex<Real>;
