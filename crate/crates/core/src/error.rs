use thiserror::Error;

/// Errors raised by constructors and solvers when their inputs violate a
/// precondition. Failing a *property* (an axiom check, an isomorphism test)
/// is never an error; those operations report through their return values.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: String, found: String },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("cannot parse scalar {text:?}: {reason}")]
    ScalarParse { text: String, reason: String },

    #[error("malformed input: {0}")]
    Format(String),

    #[error("structure constants are not antisymmetric at basis pair ({0}, {1})")]
    NotAntisymmetric(usize, usize),

    #[error(
        "(kappa, lambda) violates the generalised derivation condition at basis pair ({i}, {j})"
    )]
    NotGenDerPair { i: usize, j: usize },

    #[error("map is not a derivation: fails at basis pair ({i}, {j})")]
    NotDerivation { i: usize, j: usize },

    #[error("not a 2-cocycle: {0}")]
    NotCocycle(String),

    #[error("affine cocycle data fails the compatibility condition at basis pair ({i}, {j})")]
    CocycleCompatibility { i: usize, j: usize },

    #[error("linear map is singular")]
    Singular,

    #[error("subaffgebra condition ({0}) violated")]
    Subaffgebra(SubaffgebraCondition),

    #[error("hull hypothesis violated: kappa is not a scalar multiple of the identity{}",
        if *.derivation_type { " (the affgebra is derivation-type, but the hull needs a scalar kappa)" } else { "" })]
    HullHypothesis { derivation_type: bool },

    #[error("exhaustive search refused: {states} states exceed the bound of {bound}")]
    BoundExceeded { states: u128, bound: u128 },

    #[error("exhaustive search needs a finite field; use iso_conditions with an explicit candidate over Q")]
    NeedsFiniteField,

    #[error("fibre is not a catalog-tagged simple Lie algebra")]
    NotSimpleFibre,

    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),

    #[error("bad parameter {name:?}: {reason}")]
    Param { name: String, reason: String },
}

/// Which clause of the coset criterion for subaffgebras failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubaffgebraCondition {
    /// `kappa(a) - a + s` is not in `h`.
    A,
    /// `h` is not `kappa`-stable.
    B,
    /// `h` is not `(lambda + ad_a)`-stable.
    C,
    /// `h` is not closed under the bracket.
    Subalgebra,
    /// The proposed basis of `h` is linearly dependent.
    Basis,
}

impl std::fmt::Display for SubaffgebraCondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Self::A => "a",
            Self::B => "b",
            Self::C => "c",
            Self::Subalgebra => "subalgebra",
            Self::Basis => "basis",
        };
        f.write_str(s)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
