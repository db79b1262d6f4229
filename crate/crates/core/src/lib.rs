pub mod check;
pub mod clifford;
pub mod expr;
pub mod family;
pub mod forms;
pub mod geometry;
pub mod harness;
pub mod linalg;
pub mod spinor;
