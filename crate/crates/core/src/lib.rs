pub mod algebra;
pub mod cli;
pub mod error;
pub mod field;
pub mod finder;
pub mod linalg;
pub mod oracle;
pub mod subspace;
