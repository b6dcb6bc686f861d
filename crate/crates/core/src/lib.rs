//! Normal Hochschild cohomology, height and fullness of exceptional collections,
//! computed exactly from a minimal A∞ model of the Ext algebra.

pub mod collection;
pub mod exactlin;
pub mod extint;
pub mod fixtures;
pub mod fullness;
pub mod height;
pub mod nhh;
pub mod pseudoheight;
pub mod synth;
