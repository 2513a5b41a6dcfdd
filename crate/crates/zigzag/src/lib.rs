pub mod algebra;
pub mod chebyshev;
pub mod cli;
pub mod error;
pub mod field;
pub mod graded;
pub mod graph;
pub mod intmat;
pub mod resolution;
pub mod structure;
