pub mod gf;
pub mod mpoly;
pub mod upoly;
pub mod projgeom;
pub mod frobcore;
pub mod analysis;
pub mod families;
pub mod cli;
