#!/usr/bin/env python3
# Copyright 2026 The modalchain Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the synthetic test corpus under tests/data.

Writes recordings (manifest + keyframe images), ground-truth plans, task
specs, the prompt config with its worked example, and the canned mock
responses. Replay transcripts are produced afterwards by
tools/regen_transcripts.sh, which drives the CLI against the mock backend.
"""

import json
import math
import random
from pathlib import Path

from PIL import Image

ROOT = Path(__file__).resolve().parent.parent / "tests" / "data"
FPS = 30.0
N_FRAMES = 48
EMG_RATE = 200.0
AUDIO_RATE = 4000.0
WIDTH, HEIGHT = 640, 480


def write(path, text):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def write_json(path, doc):
    write(path, json.dumps(doc, indent=2) + "\n")


def levels(segments, rest=0.05):
    """Per-frame effort from [(first, last, level)] segments."""
    out = [rest] * N_FRAMES
    for first, last, level in segments:
        for i in range(first, last + 1):
            out[i] = level
    return out


def emg_from_levels(lv, rng):
    n = int(N_FRAMES * EMG_RATE / FPS)
    gains = [rng.uniform(0.6, 1.0) for _ in range(8)]
    channels = [[] for _ in range(8)]
    for j in range(n):
        frame = min(int(j * FPS // EMG_RATE), N_FRAMES - 1)
        for c in range(8):
            v = lv[frame] * gains[c] * rng.uniform(0.7, 1.0)
            channels[c].append(round(v, 4))
    return {"sample_rate_hz": EMG_RATE, "channels": channels}


def audio_from_hits(hits, rng):
    n = int(N_FRAMES * AUDIO_RATE / FPS)
    samples = [0.0] * n
    for frame, amp in hits:
        start = int(frame * AUDIO_RATE / FPS)
        for k in range(int(0.08 * AUDIO_RATE)):
            if start + k >= n:
                break
            decay = math.exp(-k / (0.02 * AUDIO_RATE))
            samples[start + k] += amp * decay * math.sin(2 * math.pi * 180 * k / AUDIO_RATE)
    return {"sample_rate_hz": AUDIO_RATE,
            "samples": [round(max(-1.0, min(1.0, s + rng.uniform(-0.005, 0.005))), 4) for s in samples]}


def hand_track(i, kind):
    """Fingertip pixels; `kind` selects a motion pattern."""
    t = i / (N_FRAMES - 1)
    left = {"thumb": [200, 300], "middle": [230, 310]}
    if kind == "twist":
        ang = math.pi * math.sin(3 * math.pi * t)
        cx, cy = 420, 220
        right = {"thumb": [round(cx + 25 * math.cos(ang), 1), round(cy + 25 * math.sin(ang), 1)],
                 "middle": [round(cx - 25 * math.cos(ang), 1), round(cy - 25 * math.sin(ang), 1)]}
        return {"left": left, "right": right}
    if kind == "press":
        y = 260 + 40 * abs(math.sin(2 * math.pi * t))
        return {"right": {"thumb": [400, round(y, 1)], "middle": [420, round(y + 5, 1)]}}
    if kind == "insert":
        x = 300 + 200 * t
        return {"right": {"thumb": [round(x, 1), 240], "middle": [round(x + 12, 1), 252]}}
    if kind == "drum":
        y = 200 + 60 * abs(math.sin(4 * math.pi * t))
        return {"right": {"thumb": [360, round(y, 1)], "middle": [372, round(y + 8, 1)]}}
    if kind == "example":
        x = 250 + 150 * t
        return {"left": {"thumb": [round(x, 1), 330], "middle": [round(x + 20, 1), 340]},
                "right": {"thumb": [round(500 - x / 2, 1), 280], "middle": [round(510 - x / 2, 1), 295]}}
    raise ValueError(kind)


def write_demo(dir_, demo_id, source, signal, kind, seed):
    rng = random.Random(seed)
    frames = []
    img_dir = dir_ / "images"
    img_dir.mkdir(parents=True, exist_ok=True)
    for i in range(N_FRAMES):
        name = f"frame_{i:03d}.png"
        color = ((seed * 53 + i * 5) % 256, (seed * 97 + i * 3) % 256, (seed * 29 + i * 7) % 256)
        Image.new("RGB", (16, 12), color).save(img_dir / name, optimize=True)
        frames.append({"index": i, "timestamp_s": round(i / FPS, 6), "image": name,
                       "hands": hand_track(i, kind)})
    doc = {"id": demo_id, "frame_rate_hz": FPS, "image_dir": "images",
           "image_width": WIDTH, "image_height": HEIGHT, "force_source": source}
    if source == "emg":
        doc["emg"] = emg_from_levels(signal, rng)
    else:
        doc["audio"] = audio_from_hits(signal, rng)
    doc["frames"] = frames
    write(dir_ / "demo.json", json.dumps(doc, separators=(",", ":")) + "\n")


def vec(x, y, z):
    return [x, y, z]


VIDEOS = {
    "video_01": {
        "source": "emg", "kind": "press", "seed": 11,
        "signal": levels([(10, 19, 0.3), (26, 37, 0.9)]),
        "plan": "Move_to(right, cube)\nPress(right, cube, 30)\nPress(right, cube, 90)\n",
        "task": {
            "task": "pressing_cube",
            "objects": {"cube": {"position": vec(0.4, 0.1, 0.03), "extent_m": 0.03}},
            "grippers": {"left": {"position": vec(0.2, 0.2, 0.2)}, "right": {"position": vec(0.2, -0.2, 0.2)}},
            "success": {"object": "cube", "pattern": [30, 90]},
        },
        "stages": [
            "Force analysis:\nThe force rises twice. The first rise is moderate, around 0.3, and lasts about a "
            "third of a second; after a short rest the second rise is much stronger, close to the maximum. "
            "The person applies force twice with clearly different strength. Without hand or image data it "
            "is unclear what the actions are.\n",
            "Hand analysis:\nOnly the right hand is visible. Its fingertips move down while the force rises "
            "and back up when it falls, without closing around anything, so the hand pushes down twice: "
            "first gently, then firmly. The left hand does not take part.\n",
            "Image analysis:\nThe right hand moves over a small cube on the table and presses on its top "
            "face twice, first lightly and then hard.\n\nPlan:\nMove_to(right, cube)\nPress(right, cube, 30)\n"
            "Press(right, cube, 90)\n",
        ],
        "program": "```python\nfrom skills import Move_to, Press, Find\nMove_to('right', Find('cube'))\n"
                   "Press('right', 'cube', 30)\nPress('right', 'cube', 90)\n```\n",
    },
    "video_02": {
        "source": "emg", "kind": "twist", "seed": 23,
        "signal": levels([(8, 13, 0.7), (20, 25, 0.7), (32, 37, 0.7)]),
        "plan": "Move_to(left, bottle)\nGrasp(left, bottle)\nMove_to(right, bottle_cap)\nfor _ in range(3):\n"
                "    Grasp(right, bottle_cap)\n    Twist(right, counterclockwise, 180)\n    Release(right)\n"
                "    Twist(right, clockwise, 180)\n",
        "task": {
            "task": "opening_bottle",
            "objects": {"bottle": {"position": vec(0.4, 0.0, 0.1), "extent_m": 0.04},
                        "bottle_cap": {"position": vec(0.4, 0.0, 0.22), "extent_m": 0.02}},
            "grippers": {"left": {"position": vec(0.2, 0.2, 0.2)}, "right": {"position": vec(0.2, -0.2, 0.2)}},
            "success": {"object": "bottle_cap", "min_rotation_deg": 360},
        },
        "stages": [
            "Force analysis:\nForce is applied three times with similar strength and released in between. "
            "The person repeats the same forceful action three times. Without hand or image data it is "
            "unclear what the action is.\n",
            "Hand analysis:\nThe left hand stays closed and still for the whole recording, so it holds an "
            "object steady. During each force burst the right thumb and middle finger close and rotate "
            "counterclockwise by about 180 degrees; when the force drops the fingers open and rotate back "
            "clockwise by about 180 degrees. The right hand grasps, twists counterclockwise, releases and "
            "turns back, three times.\n",
            "Image analysis:\nThe left hand holds a bottle on the table and the right hand twists the bottle "
            "cap. Each counterclockwise twist while holding the cap loosens it; the clockwise turn happens "
            "with the hand open.\n\nPlan:\nMove_to(left, bottle)\nGrasp(left, bottle)\nMove_to(right, bottle_cap)\n"
            "for _ in range(3):\n    Grasp(right, bottle_cap)\n    Twist(right, counterclockwise, 180)\n"
            "    Release(right)\n    Twist(right, clockwise, 180)\n",
        ],
        # The opening-bottle listing, verbatim.
        "program": "```python\nfrom skills import Grasp, Release, Twist, Find, Move_to\n"
                   "# Based on video analysis and APIs, generate python code:\n"
                   "Move_to('left', Find('bottle'))\nGrasp('left')\nMove_to('right', Find('bottle_cap'))\n"
                   "for _ in range(3):\n    Grasp('right')\n    Twist('right', 'counterclockwise', 180)\n"
                   "    Release('right')\n    Twist('right', 'clockwise', 180)\n```\n",
    },
    "video_03": {
        "source": "emg", "kind": "insert", "seed": 37,
        "signal": levels([(4, 12, 0.85), (16, 26, 0.25), (30, 41, 0.95)]),
        "plan": "Grasp(right, plug, 100)\nMove_to(right, box, 20)\nInsert(right, power_strip, 100)\n",
        "task": {
            "task": "inserting_plug",
            "objects": {"plug": {"position": vec(0.3, -0.1, 0.05), "extent_m": 0.02},
                        "box": {"position": vec(0.6, -0.1, 0.05), "extent_m": 0.1},
                        "power_strip": {"position": vec(0.51, -0.1, 0.05), "extent_m": 0.05}},
            "grippers": {"left": {"position": vec(0.2, 0.2, 0.2)}, "right": {"position": vec(0.3, -0.1, 0.05)}},
            "thresholds": {"insert_force": 80},
            "success": {"object": "plug", "insert_target": "power_strip"},
        },
        "stages": [
            "Force analysis:\nThere are three phases of force: a strong grip at the start, a long stretch of "
            "light force in the middle, and a final push at nearly maximum force.\n",
            "Hand analysis:\nThe right hand closes firmly at the start and keeps its grip. In the middle "
            "phase it moves slowly sideways with little force, rotating what it holds against a surface. "
            "In the last phase the hand pushes forward hard.\n",
            "Image analysis:\nThe right hand picks up a plug firmly, pushes it lightly against the box to "
            "turn it in the hand, then inserts it into the power strip with high force.\n\nPlan:\n"
            "Grasp(right, plug, 100)\nMove_to(right, box, 20)\nInsert(right, power_strip, 100)\n",
        ],
        # The inserting-plug listing, verbatim.
        "program": "```python\nfrom skills import Grasp, Push_towards, Insert\n"
                   "Grasp('right', 'plug', 100) # force range from [0, 100]\n"
                   "Move_to('right', 'box', 20) # rotate plug in-hand\nInsert('right', 'power_strip', 100)\n```\n",
    },
    "video_04": {
        "source": "audio", "kind": "drum", "seed": 41,
        "signal": [(6, 0.3), (16, 0.8), (26, 0.3), (36, 0.8)],
        "plan": "for _ in range(2):\n    Hit(drum, 30)\n    Hit(drum, 80)\n",
        "task": {
            "task": "playing_drum",
            "objects": {"drum": {"position": vec(0.5, 0.0, 0.1), "extent_m": 0.15}},
            "grippers": {"left": {"position": vec(0.2, 0.2, 0.2)}, "right": {"position": vec(0.2, -0.2, 0.3)}},
            "success": {"object": "drum", "pattern": [30, 80, 30, 80], "force_tolerance": 20},
        },
        "stages": [
            "Force analysis:\nThe sound shows four short impacts at a regular pace, alternating soft and "
            "loud: soft, loud, soft, loud.\n",
            "Hand analysis:\nThe right hand moves down and up four times in rhythm with the impacts, "
            "without grasping anything.\n",
            "Image analysis:\nThe right hand strikes a drum four times, alternating a gentle hit and a firm "
            "hit.\n\nPlan:\nfor _ in range(2):\n    Hit(drum, 30)\n    Hit(drum, 80)\n",
        ],
        "program": "```python\nfrom skills import Hit\nfor _ in range(2):\n    Hit('drum', 30)\n"
                   "    Hit('drum', 80)\n```\n",
    },
}

ACTION_SET = """Each action is written Skill(arg, ...). Hands are `left` or `right`; forces are
integers from 0 (none) to 100 (maximum); angles are in degrees.

Grasp(hand, object, force)     close the hand on an object
Release(hand)                  open the hand
Twist(hand, direction, angle)  rotate the wrist clockwise or counterclockwise
Move_to(hand, target, force)   move the hand to a target; force is optional and
                               means the hand pushes on contact
Push_towards(hand, target, force)
Insert(hand, target, force)    insert the held object into the target
Hit(target, force)             strike the target once
Press(hand, target, force)     press on the target
Wipe(hand, target)             sweep the hand across the target surface
Repeated actions may be written as `for _ in range(N):` with an indented body.
"""

EXAMPLE_ANALYSIS = """Force analysis:
Force rises twice. The first rise is moderate and short; the second one is
strong and lasts longer. The person applies force twice.

Hand analysis:
The right fingertips close around something and rotate clockwise by about 90
degrees during the first rise, then open. The left hand moves across the
table and pushes down during the second rise.

Image analysis:
The right hand grasps an apple lightly and turns it clockwise, then lets go.
The left hand moves to a can and presses on its lid firmly.

Plan:
Move_to(right, apple)
Grasp(right, apple, 30)
Twist(right, clockwise, 90)
Release(right)
Move_to(left, can)
Press(left, can, 80)
"""

DESCRIPTIONS = {
    "force": "A per-keyframe effort level in [0, 1], estimated from forearm muscle activity (EMG) or "
             "from the loudness of contact sounds. Rising values mean the person starts gripping, "
             "pushing or striking; falling values mean release.",
    "hand": "Pixel locations (x, y) of the thumb and middle fingertips of each hand in each keyframe; "
            "`absent` means the hand is not visible. Fingertips closing together indicate grasping; "
            "the thumb circling the middle finger indicates wrist rotation.",
    "image": "RGB keyframes of the scene, used to identify the objects and which hand acts on them.",
}


def main():
    prompt_dir = ROOT / "prompt"
    write(prompt_dir / "actions.txt", ACTION_SET)
    write(prompt_dir / "example" / "analysis.txt", EXAMPLE_ANALYSIS)
    write_demo(prompt_dir / "example", "example", "emg", levels([(6, 14, 0.4), (24, 38, 0.85)]), "example", 5)
    write_json(prompt_dir / "prompt.json", {
        "keyframes": 8,
        "modalities": ["force", "hand", "image"],
        "modality_descriptions": DESCRIPTIONS,
        "action_set_file": "actions.txt",
        "example": {"manifest": "example/demo.json", "analysis_file": "example/analysis.txt",
                    "objects": ["apple", "can"]},
    })

    rules = []
    for vid, v in VIDEOS.items():
        d = ROOT / "corpus" / vid
        write_demo(d, vid, v["source"], v["signal"], v["kind"], v["seed"])
        write(d / "plan.txt", v["plan"])
        write_json(d / "task.json", v["task"])
        resp = ROOT / "mock" / "responses" / vid
        for i, text in enumerate(v["stages"]):
            write(resp / f"stage{i + 1}.txt", text)
        write(resp / "combined.txt", "".join(s if s.endswith("\n\n") else s + "\n" for s in v["stages"]).rstrip() + "\n")
        write(resp / "program.txt", v["program"])
        head = f"Recording {vid}."
        rel = f"responses/{vid}"
        rules += [
            {"match": [head, "generate python code"], "response_file": f"{rel}/program.txt"},
            {"match": [f"{head} Stage 3 of 3"], "response_file": f"{rel}/stage3.txt"},
            {"match": [f"{head} Stage 2 of 3"], "response_file": f"{rel}/stage2.txt"},
            {"match": [f"{head} Stage 1 of 3"], "response_file": f"{rel}/stage1.txt"},
            {"match": [f"{head} Analyze the recording"], "response_file": f"{rel}/combined.txt"},
            {"match": [head, "Then write the final plan"], "response_file": f"{rel}/combined.txt"},
            {"match": [head, "Do not write a plan yet"], "response_file": f"{rel}/stage1.txt"},
        ]
    write_json(ROOT / "mock" / "rules.json", {"rules": rules})

    write_json(ROOT / "tasks" / "wiping_board.json", {
        "task": "wiping_board",
        "objects": {"board": {"position": vec(0.5, 0.0, 0.0), "extent_m": 0.2},
                    "sponge": {"position": vec(0.3, -0.2, 0.02), "extent_m": 0.03}},
        "grippers": {"left": {"position": vec(0.2, 0.2, 0.2)}, "right": {"position": vec(0.3, -0.2, 0.02)}},
        "marks": [{"name": "m1", "on": "board", "position": vec(0.45, 0.05, 0.0)},
                  {"name": "m2", "on": "board", "position": vec(0.6, -0.1, 0.0)}],
        "success": {"object": "board"},
    })

    common = {"corpus": "corpus", "prompt": "prompt/prompt.json", "api_description": "../../data/skills_api.txt",
              "strategies": ["com"], "ablations": ["all"], "trials": 3, "parallelism": 2, "seed": 7}
    write_json(ROOT / "eval_mock.json", {**common, "output_dir": "out_mock",
                                         "backend": {"kind": "mock", "rules": "mock/rules.json"}})
    write_json(ROOT / "eval_replay.json", {**common, "output_dir": "out_replay", "backend": {
        "kind": "replay",
        "transcripts": ["transcripts/eval_com.jsonl"] + [f"transcripts/pipeline_{v}.jsonl" for v in VIDEOS]}})


if __name__ == "__main__":
    main()
