use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("qubit {qubit} out of range for width {width}")]
    QubitOutOfRange { qubit: usize, width: usize },
    #[error("qubit {0} used more than once in a gate")]
    DuplicateQubit(usize),
    #[error("{kind} gate expects {expected} controls, got {got}")]
    ControlArity {
        kind: &'static str,
        expected: &'static str,
        got: usize,
    },
    #[error("circuit is not reversible-pure: gate {index} is {kind}")]
    NotReversible { index: usize, kind: &'static str },
    #[error("multi-controlled NOT at gate {0} must be lowered first")]
    UnloweredMcx(usize),
    #[error("width mismatch: circuit has {circuit}, state has {state}")]
    WidthMismatch { circuit: usize, state: usize },
    #[error("registers overlap on qubit {0}")]
    Overlap(usize),
    #[error("register size mismatch: {0}")]
    SizeMismatch(String),
    #[error("not enough dirty qubits: need {need}, have {have}")]
    InsufficientDirty { need: usize, have: usize },
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("{a} is not invertible modulo {modulus} (gcd {gcd})")]
    NotInvertible {
        a: String,
        modulus: String,
        gcd: String,
    },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("width {width} exceeds the statevector cap of {cap}")]
    WidthCap { width: usize, cap: usize },
    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),
    #[error("checkpoints must be sorted and at most the gate count")]
    BadCheckpoints,
    #[error("fault localization inconclusive: no segment deviates")]
    Inconclusive,
    #[error("need at least {need} rows, got {got}")]
    TooFewRows { need: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
