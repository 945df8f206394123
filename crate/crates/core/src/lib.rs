pub mod cli;
pub mod grothendieck;
pub mod intlat;
pub mod simpab;
pub mod sconstr;
pub mod simplex;
pub mod slices;
pub mod verify;
