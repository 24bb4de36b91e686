//! Real zeros of random trigonometric polynomials, Laurent systems and
//! exponential sums: closed-form predictions from Newton polytopes and
//! ellipsoids, certified zero counters, and a seeded Monte Carlo harness that
//! checks one against the other.

pub mod ensembles;
pub mod geometry;
pub mod harness;
pub mod predictors;
pub mod spectra;
pub mod zerocount;
