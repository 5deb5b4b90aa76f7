use std::io;
use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("malformed record{}: {message}", location(*offset, field.as_deref()))]
    Malformed {
        /// Byte offset into the document, when known.
        offset: Option<usize>,
        field: Option<String>,
        message: String,
    },

    #[error("unsupported record format `{0}` (supported: json-v1)")]
    UnsupportedFormat(String),

    #[error("{}: integrity check failed: {message}", path.display())]
    Integrity { path: PathBuf, message: String },

    #[error("{}: {message}", path.display())]
    Corpus { path: PathBuf, message: String },

    #[error(transparent)]
    Core(#[from] transprint_core::Error),
}

fn location(offset: Option<usize>, field: Option<&str>) -> String {
    match (field, offset) {
        (Some(f), Some(o)) => format!(" (field `{f}`, byte {o})"),
        (Some(f), None) => format!(" (field `{f}`)"),
        (None, Some(o)) => format!(" (byte {o})"),
        (None, None) => String::new(),
    }
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
