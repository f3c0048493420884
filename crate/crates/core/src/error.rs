use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("operation requires a finite field")]
    InfiniteField,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("inner function of a composition is constant")]
    ConstantInner,
    #[error("input is a constant rational function")]
    ConstantInput,
    #[error("field too small: no normal form exists over a field with {0} elements")]
    FieldTooSmall(u64),
    #[error("not a unit: degree {0} instead of 1")]
    NotAUnit(usize),
    #[error("closure exceeded {0} elements (group is probably infinite)")]
    ClosureCapExceeded(usize),
    #[error("set is not a group: {0}")]
    NotAGroup(String),
    #[error("function is not in normal form")]
    NotNormalForm,
    #[error("fixing identity holds for every value of the parameter")]
    DegenerateIdentity,
    #[error("all coefficients of the symmetric product are constant")]
    AllCoefficientsConstant,
    #[error("problem too large: {0}")]
    TooLarge(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("coefficient not in field: {0}")]
    CoefficientNotInField(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}
