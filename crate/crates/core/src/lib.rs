//! Eventually-constant sequence rings `R(T, S)` over finite-dimensional
//! algebras, their finitely presented modules, and verified G-flat covers.

pub mod algebra;
pub mod error;
pub mod evmodule;
pub mod evring;
pub mod io;
pub mod linalg;
pub mod module;
pub mod oracle;
pub mod report;
pub mod scenarios;
pub mod verdict;

pub use error::{Error, Result};
