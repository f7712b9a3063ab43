pub mod abelian;
pub mod error;
pub mod incidence;
pub mod lefschetz;
pub mod linalg;
pub mod partitions;
pub mod report;
pub mod suite;
