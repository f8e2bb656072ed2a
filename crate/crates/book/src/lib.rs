//! The guide's code listings, compiled as doc-tests. One module per chapter
//! so a failure points at its chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/exact-numbers.md")]
pub mod exact_numbers {}
#[doc = include_str!("../../../book/src/continued-fractions.md")]
pub mod continued_fractions {}
#[doc = include_str!("../../../book/src/question-mark.md")]
pub mod question_mark {}
#[doc = include_str!("../../../book/src/jacobi-perron.md")]
pub mod jacobi_perron {}
#[doc = include_str!("../../../book/src/blocks.md")]
pub mod blocks {}
#[doc = include_str!("../../../book/src/k-theory.md")]
pub mod k_theory {}
#[doc = include_str!("../../../book/src/cluster.md")]
pub mod cluster {}
#[doc = include_str!("../../../book/src/command-line.md")]
pub mod command_line {}
