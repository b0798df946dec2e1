//! Plane sextics over binary fields and their purely inseparable double covers.

pub mod field;
pub mod poly;
pub mod plane;
pub mod schroeer;
pub mod separable;
