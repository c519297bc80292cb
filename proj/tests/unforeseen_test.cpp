#include <gtest/gtest.h>

#include "foresight/oracle.hpp"
#include "foresight/unforeseen.hpp"
#include "support/generators.hpp"

namespace foresight {
namespace {

EventSpace paper_space() {
  return EventSpace::from_atoms({"c1", "c2", "c3"}, {"1", "1", "1"},
                                {{"e111", {"1", "1", "1"}}, {"e110", {"1", "1", "0"}}, {"e001", {"0", "0", "1"}}});
}

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::InvalidSpace;
}

TEST(LabelUnforeseenTest, WorkedExample) {
  const Label label = label_unforeseen(paper_space(), {{"1", "0", "0"}});
  EXPECT_EQ(label.subset, Subset(3, {0, 1}));
  EXPECT_EQ(label.depth, 1u);
  EXPECT_FALSE(label.is_empty_label());
}

TEST(LabelUnforeseenTest, ExactProfileMatchesItsBlock) {
  const EventSpace space = EventSpace::from_atoms(
      {"c1", "c2"}, {"1", "1"}, {{"a", {"1", "1"}}, {"b", {"0", "1"}}, {"c", {"1", "1"}}});
  const Label label = label_unforeseen(space, {{"1", "1"}});
  EXPECT_EQ(label.subset, Subset(3, {0, 2}));
  EXPECT_EQ(label.depth, 2u);
}

TEST(LabelUnforeseenTest, NovelProfileIsEmptyLabel) {
  const Label label = label_unforeseen(paper_space(), {{"2", "2", "2"}});
  EXPECT_TRUE(label.is_empty_label());
  EXPECT_EQ(label.depth, 0u);
  EXPECT_EQ(label.subset, Subset(3));
}

TEST(LabelUnforeseenTest, NovelValueOnLessImportantCharacteristic) {
  const Label label = label_unforeseen(paper_space(), {{"0", "0", "7"}});
  EXPECT_EQ(label.subset, Subset(3, {2}));
  EXPECT_EQ(label.depth, 2u);
}

TEST(LabelUnforeseenTest, RespectsImportanceOrder) {
  // With c3 most important, (1,0,0) first matches e110 on c3 alone.
  const EventSpace space = paper_space().with_importance_order({2, 1, 0});
  const Label label = label_unforeseen(space, {{"1", "0", "0"}});
  EXPECT_EQ(label.subset, Subset(3, {1}));
  EXPECT_EQ(label.depth, 1u);
}

TEST(LabelUnforeseenTest, LengthMismatch) {
  EXPECT_EQ(code_of([] { (void)label_unforeseen(paper_space(), {{"1"}}); }), ErrorCode::ProfileLengthMismatch);
}

TEST(LabelUnforeseenTest, DepthAndMaximalityProperties) {
  testing::Rng rng(17);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = testing::uniform_size(rng, 1, 10);
    const std::size_t m = testing::uniform_size(rng, 1, 5);
    const EventSpace space = testing::random_space(rng, n, m);
    const auto profile = testing::random_profile(rng, m);
    const Label label = label_unforeseen(space, profile);
    const auto& order = space.importance_order();

    auto matches = [&](AtomIndex a, std::size_t r) {
      for (std::size_t k = 0; k < r; ++k) {
        if (space.atoms()[a].profile[order[k]] != profile.values[order[k]]) return false;
      }
      return true;
    };
    if (label.is_empty_label()) {
      EXPECT_EQ(label.depth, 0u);
      for (AtomIndex a = 0; a < n; ++a) EXPECT_FALSE(matches(a, 1));
      continue;
    }
    EXPECT_GE(shared_prefix_length(space, label.subset), label.depth);
    for (AtomIndex a = 0; a < n; ++a) {
      EXPECT_EQ(label.subset.contains(a), matches(a, label.depth));
      if (label.depth < m) EXPECT_FALSE(matches(a, label.depth + 1));
    }
    EXPECT_EQ(label, oracle::oracle_label(space, profile));
  }
}

TEST(LabelUnforeseenTest, IndependentOfAtomInputOrder) {
  testing::Rng rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = testing::uniform_size(rng, 2, 9);
    const std::size_t m = testing::uniform_size(rng, 1, 4);
    const EventSpace space = testing::random_space(rng, n, m);
    std::vector<Atom> shuffled = space.atoms();
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const EventSpace other(space.schema(), shuffled);
    const auto profile = testing::random_profile(rng, m);
    const Label a = label_unforeseen(space, profile);
    const Label b = label_unforeseen(other, profile);
    EXPECT_EQ(a.depth, b.depth);
    auto ids_a = space.ids_of(a.subset);
    auto ids_b = other.ids_of(b.subset);
    std::sort(ids_a.begin(), ids_a.end());
    std::sort(ids_b.begin(), ids_b.end());
    EXPECT_EQ(ids_a, ids_b);
  }
}

TEST(RelabelAtomicTest, Examples) {
  const EventSpace space = paper_space();
  EXPECT_EQ(relabel_atomic(space, "e111"), Subset(3, {0}));
  EXPECT_EQ(relabel_atomic(space, "e110"), Subset(3, {1}));
  EXPECT_EQ(relabel_atomic(space, "e001"), Subset(3, {2}));

  const EventSpace shared = EventSpace::from_atoms(
      {"c1", "c2", "c3"}, {"1", "1", "0"}, {{"a", {"1", "1", "0"}}, {"b", {"1", "1", "0"}}, {"c", {"0", "0", "1"}}});
  EXPECT_EQ(relabel_atomic(shared, "a"), Subset(3, {0, 1}));
  EXPECT_EQ(relabel_atomic(shared, "b"), Subset(3, {0, 1}));
  EXPECT_EQ(code_of([&] { (void)relabel_atomic(shared, "zz"); }), ErrorCode::UnknownAtom);
}

TEST(ConditionTest, Examples) {
  const RawAssessment sure(3, {{Subset(3, {0}), 0.25}, {Subset(3, {0, 1}), 0.75}}, 0.0);
  const MassFunction same = condition_on_foreseeable(sure);
  EXPECT_EQ(same.mass_of(Subset(3, {0})), 0.25);
  EXPECT_EQ(same.mass_of(Subset(3, {0, 1})), 0.75);

  const RawAssessment raw(3, {{Subset(3, {0}), 0.4}, {Subset(3, {0, 1}), 0.4}}, 0.2);
  const MassFunction mf = condition_on_foreseeable(raw);
  EXPECT_NEAR(mf.mass_of(Subset(3, {0})), 0.5, 1e-12);
  EXPECT_NEAR(mf.mass_of(Subset(3, {0, 1})), 0.5, 1e-12);

  EXPECT_EQ(code_of([] { condition_on_foreseeable(RawAssessment(3, {}, 1.0)); }), ErrorCode::AllMassUnforeseeable);
  EXPECT_EQ(code_of([] { RawAssessment(3, {{Subset(3, {0}), 0.5}}, 0.4); }), ErrorCode::NotNormalized);
  EXPECT_EQ(code_of([] { RawAssessment(3, {{Subset(3), 0.5}}, 0.5); }), ErrorCode::EmptyFocalSet);
  EXPECT_EQ(code_of([] { RawAssessment(3, {{Subset(3, {1}), 1.5}}, -0.5); }), ErrorCode::NegativeMass);
}

TEST(ConditionTest, RandomAssessmentsYieldValidMass) {
  testing::Rng rng(8);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = testing::uniform_size(rng, 1, 8);
    const MassFunction base = testing::random_mass(rng, n);
    const double empty = testing::uniform_real(rng, 0.0, 0.95);
    std::vector<LabelledProbability> labelled;
    for (const auto& f : base.focal_elements()) labelled.push_back({f.subset, f.mass * (1.0 - empty)});
    const MassFunction mf = condition_on_foreseeable(RawAssessment(n, labelled, empty));
    for (const auto& f : base.focal_elements()) EXPECT_NEAR(mf.mass_of(f.subset), f.mass, 1e-12);
  }
}

}  // namespace
}  // namespace foresight
