use thiserror::Error;

/// Errors for user-facing input rejection. Internal consistency failures
/// (closure of group tables, non-integral Newton reconstructions, ...) are
/// asserts: they signal bugs, not bad input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0} is not an odd prime")]
    BadModulus(u64),
    #[error("inversion of zero")]
    DivisionByZero,
    #[error("parameter u = {u} is excluded for the {family} family: {reason}")]
    ExcludedParameter {
        family: &'static str,
        u: String,
        reason: &'static str,
    },
    #[error("twist parameter {0} must be a squarefree nonzero integer")]
    BadTwist(i64),
    #[error("prime {0} is a bad prime for this curve")]
    BadPrime(u64),
    #[error("prime {0} ramifies in the field")]
    RamifiedPrime(u64),
    #[error("sqrt({0}) already lies in the field; the cocycle degenerates to the trivial twist")]
    TwistInField(i64),
    #[error("not a genus-2 model: {0}")]
    NotGenusTwo(String),
    #[error("u = {0} has an elliptic quotient with complex multiplication (discriminant {1}); the twist identities exclude these finitely many parameters")]
    CmParameter(String, i64),
    #[error("curve spec parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
