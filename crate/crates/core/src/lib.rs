//! Rank-two Nichols algebras of Yetter-Drinfeld modules over finite groups:
//! exact scalars, group quotients, adjoint chains, Weyl groupoids and Hilbert series.

pub mod adjoint;
pub mod desk;
pub mod groups;
pub mod hilbert;
pub mod instantiate;
pub mod linalg;
pub mod pairfile;
pub mod scalars;
pub mod weylgroupoid;
pub mod ydmod;
