//! Word combinatorics of the degree-zero component: prime words, the bases
//! `ℬ^xy`, `𝒞^xy`, `𝒟^xy` and the block base changes between them.

pub mod admissible;
pub mod base_change;
pub mod blocks;
pub mod prime;

pub use admissible::{
    dxy_member, dxy_preimage, g_poly, is_admissible, is_ordered, ordered_factors, signature, skeleton, skeleton_type,
    transformation, wild_indices, FactorSig, Segment, SegmentKind, Signature, SkeletonDecomposition,
};
pub use base_change::{
    base_change_block, carrier_shapes, enumerate_cxy_block, for_each_cxy_word, verify_completion_block,
    verify_transformation_block, BaseChangeMap, BaseChangeMatrix, BlockVerification, CSolver,
};
pub use blocks::{
    block_params, block_size, completion, completion_preimage, count_pattern_words, enumerate_bxy_block, f_poly,
    for_each_bxy_word, for_each_bxy_word_where, is_cxy, shapes_up_to, BlockShape, BLOCK_SIZE_CAP, BLOCK_SUM_CAP,
};
pub use prime::{
    check_alternating_products, classify_prime, has_proper_zero_prefix, is_prime, is_prime_by_type, is_xy_product, is_yx_product,
    prime_factorize, word_type, PrimeClass, PrimeFactorization, WordType,
};
