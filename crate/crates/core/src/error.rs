use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library reports. Law-type variants carry a concrete
/// witness rendered with element names.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a partial order: {law} fails at {witness}")]
    NotAPartialOrder { law: &'static str, witness: String },
    #[error("not associative at {0}")]
    NotAssociative(String),
    #[error("not monotone at {0}")]
    NotMonotone(String),
    #[error("unit not neutral at {0}")]
    UnitNotNeutral(String),
    #[error("not a join-semilattice: {0} has no least upper bound")]
    NotAJoinSemilattice(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("{what} has {size} elements, limit is {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("operands live over different base posets")]
    BaseMismatch,
    #[error("target is not commutative and dually integral")]
    NotCdi,
    #[error("downsets need at least one generator")]
    EmptyGeneratorSet,
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("law `{law}` violated at {witness}")]
    LawViolated { law: String, witness: String },
    #[error("product leaves the fragment: multiplicity {size} exceeds limit {limit}")]
    FragmentExceeded { size: usize, limit: usize },
    #[error("unit map is not an order embedding: {0}")]
    UnitNotEmbedding(String),
    #[error("the AQM is not distributively generated: {0} is not reached")]
    NotDistributivelyGenerated(String),
    #[error("not structural: {0}")]
    NotStructural(String),
    #[error("no residual {y} /* {x}: no scalar b has b * {x} <= {y}")]
    NoResidual { y: String, x: String },
    #[error("{u} is not dividing: {x} /* {u} does not exist")]
    NotDividing { u: String, x: String },
    #[error("{0} is not cyclic")]
    NotCyclic(String),
    #[error("search exhausted without a witness: {0}")]
    SearchExhausted(String),
    #[error("ill-defined: {a} * u = {b} * u but {a} * w != {b} * w")]
    IllDefined { a: String, b: String },
    #[error("not certified projective: {0}")]
    NotProjective(String),
    #[error("no lift: {0}")]
    NoLift(String),
}

impl Error {
    pub fn law(law: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::LawViolated {
            law: law.into(),
            witness: witness.into(),
        }
    }

    /// True for errors that refute a mathematical claim (a counterexample),
    /// false for errors in the input itself.
    pub fn is_violation(&self) -> bool {
        !matches!(
            self,
            Error::UnknownElement(_)
                | Error::Malformed(_)
                | Error::TooLarge { .. }
                | Error::BaseMismatch
                | Error::EmptyGeneratorSet
                | Error::UnboundVariable(_)
        )
    }
}
