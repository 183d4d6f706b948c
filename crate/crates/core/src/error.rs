use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("class undefined for order-0 jet")]
    ClassOfOrderZero,
    #[error("jet {jet} does not fit a system with {n} variables and {m} unknowns")]
    JetOutOfRange { jet: String, n: usize, m: usize },
    #[error("equation has no nonzero coefficient")]
    EmptyEquation,
    #[error("coordinate change must be an invertible {n}x{n} matrix")]
    SingularFrame { n: usize },
    #[error("top exterior degree: δ is undefined on Λ^{s} with {n} variables")]
    TopExteriorDegree { s: usize, n: usize },
    #[error("rank exceeds variable count ({r} > {n})")]
    RankExceedsVariables { r: usize, n: usize },
    #[error("degrees must be at least 1")]
    ZeroDegree,
    #[error("system is not completed: projection from order {order} gains equations")]
    NotCompleted { order: usize },
    #[error("no involutive symbol found up to order {max_order}")]
    NoInvolutiveOrder { max_order: usize },
    #[error("inverse system is infinite-dimensional; apply relative localization first")]
    InfiniteInverseSystem,
    #[error("wrong codimension for localization: localized system is not of finite type up to order {max_order}")]
    NotFiniteTypeAfterLocalization { max_order: usize },
    #[error("localization codimension must satisfy 1 <= r <= n (r = {r}, n = {n})")]
    BadLocalizationRank { r: usize, n: usize },
    #[error("series truncations differ ({0} vs {1})")]
    TruncationMismatch(usize, usize),
    #[error("variable index {i} out of range 1..={n}")]
    VariableOutOfRange { i: usize, n: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
