//! Quaternary-code fractional factorial designs: construction, aliasing
//! analysis, and the code-arithmetic equation systems for `(1/4)^p` fractions.
//!
//! * [`design`] builds the two-level design of a generator `G = (V, I_n)`.
//! * [`jchar`] scans column subsets of a design for J-characteristics.
//! * [`ca_engine`] derives the k- and a-equation matrices.
//! * [`qc64`] turns a frequency vector into a word spectrum without building the design.

pub mod ca_engine;
pub mod design;
pub mod error;
pub mod golden;
pub mod jchar;
pub mod qc64;
pub mod report;
pub mod verify;
pub mod z4;

pub use ca_engine::{build_system, AEquation, EquationSystem, KEquation, WordType};
pub use design::{build_design, BinaryDesign, FrequencyVector, GeneratorSpec};
pub use error::{Error, Result};
pub use jchar::{spectrum_bruteforce, AliasIndex, DesignSummary, Resolution, WordSpectrum};
pub use qc64::{analyze, periodic_extend, search, AnalyzeOptions, Criterion, Method, TheoryReport};
pub use z4::Z4;
