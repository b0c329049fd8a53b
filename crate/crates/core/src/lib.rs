//! Probabilistic principle-based parsing.
//!
//! A sentence is analysed into binary proper branches (a mother and two
//! daughters), each licensed independently by three grammar modules:
//!
//! - [`xbar`]: five category-independent schemata over SPEC/COMP features,
//! - [`theta`]: discharge of the head's selected theta grid,
//! - [`case`]: a structural Case filter.
//!
//! The [`engine`] enumerates every complete phrase marker, and [`ranking`]
//! orders them by the product of an X-bar probability (schema frequencies
//! estimated from a bracketed corpus) and a theta probability (per-head grid
//! frequencies). Case never contributes a probability.
//!
//! ```
//! use gbparse::corpus::{read_corpus, read_lexicon, train};
//! use gbparse::engine::{parse, ParseOptions};
//! use gbparse::ranking::{rank, Scorer};
//! use gbparse::xbar::EstimationMode;
//!
//! let lexicon = read_lexicon(
//!     "the\tDet\t-\t-\ndog\tN\t+\t-\nbarked\tI\t+\tagent/ext:N\n",
//! ).unwrap();
//! let corpus = read_corpus(
//!     "(I:-:- (N:-:- (Det:-:- =the) ^(N:+:- =dog)) ^(I:+:- =barked))",
//! ).unwrap();
//! let t = train(&corpus, &lexicon, EstimationMode::Flat, 1.0).unwrap();
//!
//! let forest = parse(&["the", "dog", "barked"], &lexicon, &ParseOptions::default()).unwrap();
//! let ranked = rank(forest.completed(), &Scorer::new(&t.schema_table, &t.theta_table)).unwrap();
//! assert_eq!(ranked.len(), 1);
//! assert_eq!(
//!     ranked[0].marker.bracketed(),
//!     "(I:-:- (N:-:- (Det:-:- =the) ^(N:+:- =dog)) ^(I:+:- =barked))"
//! );
//! ```

pub mod case;
pub mod corpus;
pub mod engine;
pub mod error;
pub mod eval;
pub mod model;
pub mod ranking;
pub mod theta;
pub mod xbar;

pub use error::{Error, Result};
