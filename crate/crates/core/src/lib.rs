pub mod bench;
pub mod compile;
pub mod dense;
pub mod error;
pub mod fermion;
pub mod pauli;
pub mod statevector;
