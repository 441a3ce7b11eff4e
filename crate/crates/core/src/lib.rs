//! Florete, Espada and Sable: three key-encapsulation mechanisms built on
//! learning with rounding over power-of-two moduli.
//!
//! * **Florete** is ring-LWR over `x^512+1`, `x^768-x^384+1` or `x^1024+1`,
//!   repeating the 256-bit message across the polynomial and decoding by
//!   majority.
//! * **Espada** is module-LWR over `x^64+1` with large rank and four message
//!   bits per coefficient.
//! * **Sable** is module-LWR over `x^256+1` with ternary secrets.
//!
//! All three share a generic CPA-secure encryption core ([`pke`]) turned into
//! a CCA-secure KEM by the Fujisaki-Okamoto transform with implicit
//! rejection ([`kem`]).
//!
//! ```
//! use scabbard::{Kem, Level, Scheme, SchemeId};
//!
//! let kem = Kem::new(SchemeId::new(Scheme::Sable, Level::Medium));
//! let keys = kem.keygen().unwrap();
//! let (ct, ss) = kem.encaps(&keys.public).unwrap();
//! assert_eq!(kem.decaps(&keys.secret, &ct).unwrap(), ss);
//! ```

pub mod codec;
mod ct;
mod error;
pub mod kat;
pub mod kem;
pub mod params;
pub mod pke;
pub mod polymul;
pub mod ring;
pub mod sampler;
pub mod symmetric;

pub use error::Error;
pub use kem::{Ciphertext, Kem, KeyPair, PublicKey, SecretKey, SharedSecret};
pub use params::{Level, Scheme, SchemeId, SchemeParams};
