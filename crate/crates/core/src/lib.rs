pub mod algebras;
pub mod cli;
pub mod correspondence;
pub mod cover;
pub mod linalg;
pub mod modules;
pub mod scalars;
pub mod torus;
