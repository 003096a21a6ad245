pub mod gf;
pub mod plane;
pub mod gf2mat;
pub mod incidence;
pub mod group;
pub mod verify;
pub mod cli;
