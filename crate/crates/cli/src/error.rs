use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Compute(#[from] qcorr::Error),
    #[error("{0}")]
    Io(String),
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(_) | CliError::Io(_) => 1,
        }
    }

    fn category(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Compute(_) => "compute",
            CliError::Io(_) => "io",
        }
    }

    /// One line of JSON: `{"error": <category>, "message": <text>}`.
    pub fn to_json_line(&self) -> String {
        #[derive(Serialize)]
        struct Line<'a> {
            error: &'a str,
            message: String,
        }
        let message = self.to_string().split_whitespace().collect::<Vec<_>>().join(" ");
        serde_json::to_string(&Line {
            error: self.category(),
            message,
        })
        .expect("plain data")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_line_is_single_json_object() {
        let e = CliError::Usage("bad\nflag   value".into());
        let line = e.to_json_line();
        assert!(!line.contains('\n'));
        let v: serde_json::Value = serde_json::from_str(&line).unwrap();
        assert_eq!(v["error"], "usage");
        assert_eq!(v["message"], "bad flag value");
        assert_eq!(e.exit_code(), 2);
        assert_eq!(CliError::from(qcorr::Error::NoInteriorPeak).exit_code(), 1);
    }
}
