pub mod arith;
pub mod lattice;
pub mod roots;
pub mod glue;
pub mod char2;
pub mod report;
