#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "sentiment/error.hpp"
#include "sentiment/eval.hpp"
#include "test_support.hpp"

using namespace sentiment;

namespace {

constexpr auto N = Polarity::negative;
constexpr auto U = Polarity::neutral;
constexpr auto P = Polarity::positive;

ConfusionMatrix random_matrix(std::mt19937_64& gen) {
  ConfusionMatrix cm;
  for (auto& row : cm.counts)
    for (auto& v : row) v = gen() % 4 == 0 ? 0 : gen() % 500;
  if (cm.total() == 0) cm.counts[0][0] = 1;
  return cm;
}

}  // namespace

TEST_CASE("confusion matrix by hand") {
  const std::vector<Polarity> truth = {N, N, P};
  const std::vector<Polarity> pred = {N, P, P};
  const auto cm = confusion_matrix(truth, pred);
  // rows truth, cols predicted
  CHECK(cm.counts[0] == std::array<std::size_t, 3>{1, 0, 1});
  CHECK(cm.counts[1] == std::array<std::size_t, 3>{0, 0, 0});
  CHECK(cm.counts[2] == std::array<std::size_t, 3>{0, 0, 1});
  CHECK(cm.total() == 3);
  CHECK(cm.false_negatives(0) == 1);
  CHECK(cm.false_positives(2) == 1);

  // negative: TP 1, FP 0, FN 1 -> P 1, R 1/2, F1 2/3
  // neutral : 0/0 everywhere -> 0
  // positive: TP 1, FP 1, FN 0 -> P 1/2, R 1, F1 2/3
  const auto m = per_class_metrics(cm);
  CHECK(m[0].precision == 1.0);
  CHECK(m[0].recall == 0.5);
  CHECK(m[0].f1 == doctest::Approx(2.0 / 3));
  CHECK(m[1].precision == 0.0);
  CHECK(m[1].recall == 0.0);
  CHECK(m[1].f1 == 0.0);
  CHECK(m[2].precision == 0.5);
  CHECK(m[2].recall == 1.0);
  CHECK(m[2].f1 == doctest::Approx(2.0 / 3));
  CHECK(accuracy(cm) == doctest::Approx(2.0 / 3));

  const auto r = make_report(truth, pred, {});
  CHECK(r.support == std::array<std::size_t, 3>{2, 0, 1});
  // weighted precision (2*1 + 1*0.5)/3, recall (2*0.5 + 1*1)/3
  CHECK(r.weighted.precision == doctest::Approx(2.5 / 3));
  CHECK(r.weighted.recall == doctest::Approx(2.0 / 3));
  CHECK(r.weighted.f1 == doctest::Approx(2.0 / 3));
}

TEST_CASE("perfect and all-wrong predictions") {
  const std::vector<Polarity> truth = {N, U, P, P, N};
  const auto perfect = confusion_matrix(truth, truth);
  CHECK(accuracy(perfect) == 1.0);
  for (const auto& c : per_class_metrics(perfect)) {
    CHECK(c.precision == 1.0);
    CHECK(c.recall == 1.0);
    CHECK(c.f1 == 1.0);
  }
  const std::vector<Polarity> wrong = {U, P, N, N, U};
  CHECK(accuracy(confusion_matrix(truth, wrong)) == 0.0);

  const std::vector<Polarity> all_pos(5, P);
  const auto cm = confusion_matrix(truth, all_pos);
  for (std::size_t r = 0; r < 3; ++r) {
    CHECK(cm.counts[r][0] == 0);
    CHECK(cm.counts[r][1] == 0);
  }
}

TEST_CASE("confusion matrix errors") {
  const std::vector<Polarity> a = {N, U};
  const std::vector<Polarity> b = {N};
  CHECK_THROWS_AS(confusion_matrix(a, b), Error);
  CHECK_THROWS_AS(confusion_matrix(std::vector<Polarity>{}, std::vector<Polarity>{}), Error);
  CHECK_THROWS_AS(accuracy(ConfusionMatrix{}), Error);
  CHECK_THROWS_AS(weighted_metrics({}, {0, 0, 0}), Error);
}

TEST_CASE("weighted metrics") {
  const PerClassMetrics m = {{{0.8, 0.9, 0.85}, {0.5, 0.4, 0.45}, {0.7, 0.6, 0.65}}};
  SUBCASE("equal supports give the plain mean") {
    const auto w = weighted_metrics(m, {10, 10, 10});
    CHECK(w.precision == doctest::Approx((0.8 + 0.5 + 0.7) / 3));
    CHECK(w.f1 == doctest::Approx((0.85 + 0.45 + 0.65) / 3));
  }
  SUBCASE("one nonzero support picks that class") {
    const auto w = weighted_metrics(m, {0, 7, 0});
    CHECK(w.precision == 0.5);
    CHECK(w.recall == 0.4);
  }
  SUBCASE("airline class imbalance") {
    // N = 14640. Precision: (9178*0.8 + 3099*0.5 + 2363*0.7) / 14640
    //   = (7342.4 + 1549.5 + 1654.1) / 14640 = 10546 / 14640
    const auto w = weighted_metrics(m, {9178, 3099, 2363});
    CHECK(w.precision == doctest::Approx(10546.0 / 14640).epsilon(1e-12));
    // Recall: 8260.2 + 1239.6 + 1417.8 = 10917.6
    CHECK(w.recall == doctest::Approx(10917.6 / 14640).epsilon(1e-12));
    // F1: 7801.3 + 1394.55 + 1535.95 = 10731.8
    CHECK(w.f1 == doctest::Approx(10731.8 / 14640).epsilon(1e-12));
  }
}

TEST_CASE("weighted recall equals accuracy on random matrices") {
  std::mt19937_64 gen(77);
  for (int i = 0; i < 1000; ++i) {
    const auto cm = random_matrix(gen);
    std::array<std::size_t, 3> support{};
    for (std::size_t c = 0; c < 3; ++c) support[c] = cm.support(c);
    const auto w = weighted_metrics(per_class_metrics(cm), support);
    CHECK(std::abs(w.recall - accuracy(cm)) <= 1e-12);
    for (double v : {w.precision, w.recall, w.f1}) CHECK((v >= 0.0 && v <= 1.0));
  }
}

TEST_CASE("metrics ignore sample order") {
  std::mt19937_64 gen(1);
  std::vector<Polarity> truth, pred;
  for (int i = 0; i < 200; ++i) {
    truth.push_back(class_at(gen() % 3));
    pred.push_back(class_at(gen() % 3));
  }
  const auto base = make_report(truth, pred, {});
  std::vector<std::size_t> order(truth.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), gen);
  std::vector<Polarity> t2, p2;
  for (auto i : order) {
    t2.push_back(truth[i]);
    p2.push_back(pred[i]);
  }
  const auto shuffled = make_report(t2, p2, {});
  CHECK(shuffled.confusion.counts == base.confusion.counts);
  CHECK(shuffled.accuracy == base.accuracy);
  CHECK(shuffled.weighted.f1 == base.weighted.f1);
}

TEST_CASE("evaluate end to end on the fixture") {
  const auto corpus = load_dataset(test::fixture_csv());
  const Preprocessor pre;
  std::vector<TokenList> docs;
  for (const auto& r : corpus.records) docs.push_back(pre(r.text));
  const auto vec = fit(VectorizerKind::bow, docs);

  // Majority-class model: a forest of one negative leaf.
  TreeNode leaf;
  leaf.counts = {1.0, 0.0, 0.0};
  const TrainedModel majority(ModelKind::rf, {}, ForestModel{vec.dims(), {DecisionTree{{leaf}}}});
  const auto r = evaluate(majority, vec, pre, corpus, {"rf", "bow", 42, 0.75, "fixture"});
  CHECK(r.accuracy == doctest::Approx(0.5));  // 5 of 10 are negative
  CHECK(r.metadata.model == "rf");
  CHECK(r.support == std::array<std::size_t, 3>{5, 3, 2});

  // A model trained on the whole fixture with a memorizing tree is an oracle here.
  LabeledMatrix all;
  all.dims = vec.dims();
  all.vectors = transform_corpus(vec, docs);
  for (const auto& rec : corpus.records) all.labels.push_back(rec.label);
  Hyperparameters hp;
  hp.forest = {1, 0, 0, false, 1};
  const auto oracle = train_random_forest(all, hp);
  const auto perfect = evaluate(oracle, vec, pre, corpus, {});
  CHECK(perfect.accuracy == 1.0);
  CHECK(perfect.weighted.precision == 1.0);
  CHECK(perfect.weighted.f1 == 1.0);

  const TrainedModel wrong_dims(ModelKind::rf, {}, ForestModel{vec.dims() + 1, {DecisionTree{{leaf}}}});
  CHECK_THROWS_AS(evaluate(wrong_dims, vec, pre, corpus, {}), Error);
  CHECK_THROWS_AS(evaluate(majority, vec, pre, Corpus{}, {}), Error);

  const auto table = render_table(r);
  CHECK(table.find("0.50") != std::string::npos);
  const auto j = to_json(r);
  CHECK(j["accuracy"] == 0.5);
}
