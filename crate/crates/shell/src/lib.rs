//! The conceptual shell: a line-oriented command language over `vc_core`,
//! workspace files, and the `vcsh` command line.
//!
//! ```
//! use vcsh::Session;
//!
//! let mut s = Session::default();
//! for line in [
//!     "type T = { a, b }",
//!     "world I = { i1, i2 }",
//!     "world B = { b1 }",
//!     "evolvent f : B -> I = { b1 -> i1 }",
//!     "individual h_ab : I -> T = { i1 -> a, i2 -> b }",
//! ] {
//!     s.exec_line(line).unwrap();
//! }
//! assert_eq!(s.exec_line("shift h_ab along f").unwrap(), "{b1 -> a}\n");
//! ```

pub mod command;
pub mod error;
pub mod persist;
pub mod script;
pub mod session;

pub use command::{parse_command, Command, Target};
pub use error::{Result, ShellError};
pub use session::{Format, Session};
