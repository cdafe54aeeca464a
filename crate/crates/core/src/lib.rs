pub mod cohomology;
pub mod contextuality;
pub mod limits;
pub mod linalg;
pub mod lp;
pub mod outcomes;
pub mod par;
pub mod quantum;
pub mod random;
pub mod rational;
pub mod simpdist;
pub mod sset;
