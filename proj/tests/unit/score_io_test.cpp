/*
 * Copyright 2026 The cutsynth Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "score_io.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "errors.hpp"

namespace cutsynth {
namespace {

ScoreFile Parse(const std::string& text) {
  std::istringstream in(text);
  return ReadScoreFile(in);
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

TEST(ScoreFileTest, RoundTrip) {
  ScoreFile f;
  f.producer = "model-a";
  f.sampling_rate = 2.0;
  f.entries.push_back({"a", 0.25, Coarseness::kFine, "cup", true, "v1"});
  f.entries.push_back({"b", 1.0, std::nullopt, std::nullopt, std::nullopt, std::nullopt});
  std::ostringstream out;
  WriteScoreFile(f, out);
  const auto back = Parse(out.str());
  EXPECT_EQ(back.producer, "model-a");
  EXPECT_EQ(back.sampling_rate, 2.0);
  ASSERT_EQ(back.entries.size(), 2u);
  EXPECT_EQ(back.entries[0].label, Coarseness::kFine);
  EXPECT_EQ(back.entries[0].object_name, "cup");
  EXPECT_EQ(back.entries[0].video_id, "v1");
  EXPECT_FALSE(back.entries[1].label.has_value());
  EXPECT_EQ(back.entries[1].score, 1.0);
}

TEST(ScoreFileTest, RejectsMalformedRows) {
  const std::string header = "{\"producer\":\"x\"}\n";
  EXPECT_EQ(CodeOf([&] { Parse(header + "{\"item_id\":\"a\",\"score\":1.5}\n"); }),
            ErrorCode::kParse);
  EXPECT_EQ(CodeOf([&] {
              Parse(header + "{\"item_id\":\"a\",\"score\":0.5}\n{\"item_id\":\"a\",\"score\":0.1}\n");
            }),
            ErrorCode::kParse);
  EXPECT_EQ(CodeOf([&] { Parse(header + "{\"item_id\":\"a\",\"score\":0.5,\"label\":\"odd\"}\n"); }),
            ErrorCode::kParse);
  EXPECT_EQ(CodeOf([&] { Parse(header + "not json\n"); }), ErrorCode::kParse);
}

Manifest SmallManifest() {
  Manifest m;
  auto add = [&](const std::string& id, const std::string& obj, Coarseness l, Split s) {
    AugRecord r;
    r.source_id = "src_" + obj;
    r.aug_id = id;
    r.object_name = obj;
    r.c = 0.5;
    r.label_c = l;
    r.split = s;
    m.records.push_back(r);
  };
  add("a", "cup", Coarseness::kFine, Split::kTrain);
  add("b", "cup", Coarseness::kCoarse, Split::kTrain);
  add("c", "bowl", Coarseness::kFine, Split::kTest);
  add("d", "bowl", Coarseness::kCoarse, Split::kTest);
  return m;
}

TEST(JoinScoresTest, LabelsAndSeenFromManifest) {
  const auto m = SmallManifest();
  const auto f = Parse(
      "{\"producer\":\"x\"}\n"
      "{\"item_id\":\"a\",\"score\":0.9}\n{\"item_id\":\"b\",\"score\":0.1}\n"
      "{\"item_id\":\"c\",\"score\":0.2}\n{\"item_id\":\"d\",\"score\":0.8}\n");
  const auto t = JoinScores(f, &m);
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t[0].label, Coarseness::kFine);
  EXPECT_TRUE(t[0].seen);
  EXPECT_FALSE(t[2].seen);
  const auto r = EvaluateBuckets(t);
  EXPECT_EQ(*r.seen.map, 1.0);
  EXPECT_LT(*r.unseen.map, 1.0);
  const auto j = ReportToJson(r, RandomBaselineExpectation(t));
  EXPECT_EQ(j["map_seen"].get<double>(), 1.0);
  EXPECT_EQ(j["random_baseline"].get<double>(), 0.5);
}

TEST(JoinScoresTest, MissingLabelIsAnError) {
  const auto f = Parse("{\"producer\":\"x\"}\n{\"item_id\":\"zz\",\"score\":0.9}\n");
  EXPECT_EQ(CodeOf([&] { JoinScores(f, nullptr); }), ErrorCode::kParse);
}

TEST(AggregateVideoFileTest, RequiresTwoFramesPerSecond) {
  const std::string rows = "{\"item_id\":\"f1\",\"score\":0.5}\n";
  EXPECT_EQ(CodeOf([&] { AggregateVideoFile(Parse("{\"producer\":\"x\"}\n" + rows), 0.05); }),
            ErrorCode::kParse);
  EXPECT_EQ(CodeOf([&] {
              AggregateVideoFile(Parse("{\"producer\":\"x\",\"sampling_rate\":30}\n" + rows), 0.05);
            }),
            ErrorCode::kParse);
  const auto v = AggregateVideoFile(
      Parse("{\"producer\":\"x\",\"sampling_rate\":2}\n" + rows), 0.05);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].video_id, "video");
  EXPECT_EQ(v[0].score, 0.5);
}

TEST(AggregateVideoFileTest, GroupsByVideoInFirstAppearanceOrder) {
  std::string text = "{\"producer\":\"x\",\"sampling_rate\":2}\n";
  for (int i = 1; i <= 100; ++i) {
    text += "{\"item_id\":\"b" + std::to_string(i) + "\",\"score\":" + std::to_string(i / 100.0) +
            ",\"video_id\":\"B\"}\n";
  }
  text += "{\"item_id\":\"a1\",\"score\":0.3,\"video_id\":\"A\"}\n";
  const auto v = AggregateVideoFile(Parse(text), 0.05);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0].video_id, "B");
  EXPECT_EQ(v[0].frames, 100u);
  EXPECT_EQ(v[0].score, 0.98);
  EXPECT_EQ(v[1].score, 0.3);
}

}  // namespace
}  // namespace cutsynth
