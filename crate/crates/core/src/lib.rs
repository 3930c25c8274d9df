//! Dimensions of linear systems of forms singular along Veronese varieties,
//! computed exactly over prime fields and compared with closed forms.

pub mod apolarity;
pub mod bounds;
pub mod combinatorics;
pub mod conditions;
pub mod dimension;
pub mod error;
pub mod ledger;
pub mod modlinalg;
pub mod secant;
pub mod toric;

pub use error::{Error, Result};
