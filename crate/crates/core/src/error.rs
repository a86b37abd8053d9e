use thiserror::Error;

/// Errors raised by the engine. Variants named `*Failure` or `CriteriaDisagree`
/// indicate an internal inconsistency rather than bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate {kind} name `{name}`")]
    DuplicateName { kind: &'static str, name: String },
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("arrows `{g}` and `{f}` are not composable")]
    NotComposable { g: String, f: String },
    #[error("composite `{g} . {f}` declared as `{h}` with the wrong domain or codomain")]
    CompositeTypeMismatch { g: String, f: String, h: String },
    #[error("composite `{g} . {f}` declared twice with different values")]
    ConflictingComposite { g: String, f: String },
    #[error("missing composite `{g} . {f}`")]
    MissingComposite { g: String, f: String },
    #[error("associativity fails on `{h} . {g} . {f}`")]
    AssociativityViolation { h: String, g: String, f: String },
    #[error("identity law violated: {0}")]
    IdentityViolation(String),
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
    #[error("invalid natural transformation: {0}")]
    InvalidNatTrans(String),
    #[error("invalid set-valued functor: {0}")]
    InvalidPresheaf(String),
    #[error("invalid profunctor: {0}")]
    InvalidProfunctor(String),
    #[error("enumeration bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("functors do not share a codomain: {0}")]
    CodomainMismatch(String),
    #[error("set-valued functors live over different bases: {0}")]
    BaseMismatch(String),
    #[error("element is not bicartesian: {0}")]
    NotBicartesian(String),
    #[error("idempotents are not conjugate: {0}")]
    NotConjugate(String),
    #[error("not a splitting: {0}")]
    NotASplitting(String),
    #[error("not an endomorphism: {0}")]
    NotEndomorphism(String),
    #[error("density criteria disagree at {0}")]
    CriteriaDisagree(String),
    #[error("bijection check failed: {0}")]
    BijectionFailure(String),
    #[error("cross-check failed: {0}")]
    CrossCheckFailure(String),
    #[error("absolute colimit check failed: {0}")]
    AbsoluteColimitViolated(String),
    #[error("shape is not an atom: {0}")]
    NotAtomicShape(String),
    #[error("subset is not up-closed: {0}")]
    NotUpClosed(String),
    #[error("subset is not down-closed: {0}")]
    NotDownClosed(String),
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("invalid monotone map: {0}")]
    InvalidMonotoneMap(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("not a covering: {0}")]
    NotACovering(String),
}

pub type Result<T> = std::result::Result<T, Error>;
