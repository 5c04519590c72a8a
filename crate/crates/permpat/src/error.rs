use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree must be at least 1")]
    EmptyDegree,
    #[error("degree {n} exceeds the maximum of {max}")]
    DegreeTooLarge { n: usize, max: usize },
    #[error("value {value} is outside 1..{n}")]
    ValueOutOfRange { value: usize, n: usize },
    #[error("repeated value {0}")]
    RepeatedValue(usize),
    #[error("malformed token `{0}`")]
    Malformed(String),
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("position {pos} is outside 1..{n}")]
    PositionOutOfRange { pos: usize, n: usize },
    #[error("pattern length {len} is outside 1..{n}")]
    LengthOutOfRange { len: usize, n: usize },
    #[error("parameter {param} is out of range for degree {n}")]
    ParameterOutOfRange { param: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("malformed partition `{0}`")]
    Malformed(String),
    #[error("element {0} is missing")]
    Missing(usize),
    #[error("element {0} appears more than once")]
    Duplicate(usize),
    #[error("ground sets differ: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("parameters out of range for n = {n}")]
    OutOfRange { n: usize },
    #[error("partition has a trivial block {{{0}}}")]
    TrivialBlock(usize),
}

/// Errors from group construction, the Pat/Comp engine, the classifier and the verifier.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("element cap {cap} exceeded (reached {reached} elements)")]
    ElementCap { cap: usize, reached: usize },
    #[error("degree {degree} exceeds the enumeration cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("invalid group descriptor `{0}`")]
    Descriptor(String),
    #[error("group is not transitive")]
    Intransitive,
    #[error("degree must be at least {min}, got {degree}")]
    DegreeTooSmall { degree: usize, min: usize },
    #[error("enumeration is limited to degree {max}, got {degree}")]
    EnumerationDegree { degree: usize, max: usize },
    #[error("target degree {target} must exceed the input degree {base}")]
    TargetDegree { target: usize, base: usize },
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    /// True for errors caused by a configured cap.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::ElementCap { .. } | Error::DegreeCap { .. } | Error::EnumerationDegree { .. })
    }
}
