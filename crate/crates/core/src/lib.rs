//! Exact computations with dual Artin intervals of euclidean Coxeter groups:
//! root systems, Coxeter elements and their axes, horizontal root systems,
//! windowed intervals and bowtie certificates.

pub mod coxeter;
pub mod error;
pub mod interval;
pub mod isometry;
pub mod linalg;
pub mod roots;
pub mod verdict;
