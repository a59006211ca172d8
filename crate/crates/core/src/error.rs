//! Error and warning types shared by all modules.

use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Hard failures. Every variant corresponds to a violated precondition or a
/// genuinely unanswerable request, never to a recoverable accuracy issue
/// (those are [`Warning`]s).
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A physical or numerical precondition was violated.
    Domain(&'static str),
    /// Evaluation at a singular point (e.g. a Hankel function at zero).
    Singular(&'static str),
    /// Argument outside the validated range of the plain-precision
    /// special-function evaluators.
    ArgumentTooLarge { im: f64 },
    /// A scattering-coefficient denominator vanished. Signals a true cavity
    /// resonance of the lossless idealization; unreachable for `gamma > 0`.
    Pole { omega: f64 },
    /// A root or maximum bracket could not be established.
    NoBracket(&'static str),
    /// A half-width search ran into a neighboring resonance line before
    /// reaching the half level.
    Overlap { omega: f64 },
    /// Time step too coarse (or degenerate) for the requested tabulation.
    StepSize(&'static str),
    /// An internal consistency check failed.
    Inconsistent(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(what) => write!(f, "domain error: {what}"),
            Error::Singular(what) => write!(f, "singularity: {what}"),
            Error::ArgumentTooLarge { im } => {
                write!(f, "|Im z| = {im:e} exceeds the plain-precision guard")
            }
            Error::Pole { omega } => {
                write!(f, "scattering-coefficient pole at omega = {omega}")
            }
            Error::NoBracket(what) => write!(f, "no bracket: {what}"),
            Error::Overlap { omega } => write!(
                f,
                "half-width search near omega = {omega} ran into a neighboring line"
            ),
            Error::StepSize(what) => write!(f, "step-size error: {what}"),
            Error::Inconsistent(what) => write!(f, "consistency error: {what}"),
        }
    }
}

impl core::error::Error for Error {}

/// Soft diagnostics attached to results that are still usable. Callers that
/// need hard guarantees (`--strict` in the CLI) escalate these.
#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    /// A refined peak moved by more than one scan cell; the scan grid may
    /// be too coarse to have found every line.
    GridTooCoarse { omega_m: f64 },
    /// The kernel window excludes a resonance line lying within ten of its
    /// half-widths of the atomic frequency; the kernel is likely inaccurate.
    WindowExcludesLine { omega_m: f64 },
    /// A computed population exceeded 1 by more than the accepted slack.
    PopulationBound { max: f64 },
    /// A resonance line inside the kernel window has an unmeasurable
    /// half-width (overlapping neighbors); its grid seeds use a generic
    /// width ladder instead.
    UnmeasuredLine { omega_m: f64 },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::GridTooCoarse { omega_m } => write!(
                f,
                "scan grid too coarse: refined peak at omega = {omega_m} moved more than one cell"
            ),
            Warning::WindowExcludesLine { omega_m } => write!(
                f,
                "kernel window excludes the nearby resonance line at omega = {omega_m}"
            ),
            Warning::PopulationBound { max } => {
                write!(f, "population bound exceeded: max |C_u|^2 = {max}")
            }
            Warning::UnmeasuredLine { omega_m } => write!(
                f,
                "line at omega = {omega_m} has an unmeasurable half-width; seeded generically"
            ),
        }
    }
}
