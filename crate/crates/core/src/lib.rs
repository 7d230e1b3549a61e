pub mod algebra;
pub mod cli;
pub mod connections;
pub mod construct;
pub mod corpus;
pub mod decomposition;
pub mod group;
pub mod ideals;
pub mod io;
pub mod linalg;
pub mod subspace;
