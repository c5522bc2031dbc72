pub mod deform;
pub mod error;
pub mod labeled_deform;
pub mod lr_oracle;
pub mod schubert;
pub mod selftest;
pub mod shapes;
pub mod specht;
