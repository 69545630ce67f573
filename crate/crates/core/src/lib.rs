//! Power decoding of one-point algebraic geometry codes on `C_{a,b}` curves,
//! with adaptive choice of the interpolation divisor.

pub mod agcode;
pub mod algebra;
pub mod curve;
pub mod decoder;
pub mod oracle;
pub mod radius;
pub mod rrspace;
