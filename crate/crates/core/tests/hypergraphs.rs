//! Coverability and weak colourings against exhaustive enumeration.

mod common;

#[test]
fn searches_match_enumeration_and_witnesses_are_smallest() {
    common::check_searches(2024, 100);
}

#[test]
fn coverable_implies_two_colourable() {
    common::check_cover_implies_colour(99, 100);
}

#[test]
fn chromatic_number_is_monotone_under_edge_removal() {
    common::check_chromatic_monotone(5, 100);
}
