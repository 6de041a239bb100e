pub mod collapse;
pub mod data;
pub mod decompose;
pub mod estimate;
pub mod oil;
pub mod scenario;
