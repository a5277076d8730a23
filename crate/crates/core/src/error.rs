use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{what} = {value} is outside its domain")]
    Domain { what: &'static str, value: f64 },
    #[error("mechanical advantage is singular at theta1 = {0} rad")]
    Singular(f64),
    #[error("{0} index out of range")]
    Index(&'static str),
    #[error("invalid manipulator: {0}")]
    Spec(String),
    #[error("invalid schedule: {0}")]
    Schedule(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn domain(what: &'static str, value: f64) -> Error {
    Error::Domain { what, value }
}
