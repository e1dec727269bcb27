#!/usr/bin/env python3
"""Writes the labeled mini-corpus under corpus/.

Each case is a small standalone MiniC program. Expected findings are marked
by hand in the templates below with a trailing `// @RULE` comment on the line
of the finding's head statement (the allocation for CWE401, the first free
for CWE415/CWE416, the taint source for CODE_INJECTION). The marker is
stripped from the emitted source and its line goes to corpus/truth.json.

Function names are prefixed with the case name because one project may not
define the same function twice.

    gen_corpus.py [--out DIR] [--check]
"""

import argparse
import json
import re
import sys
from pathlib import Path

ALLOCATORS = {"m": "malloc(16)", "c": "calloc(4, 4)"}

# (group, name, text). `$F` is replaced by the function prefix, `$A` by an
# allocation call. Templates using `$A` are emitted once per allocator.
CWE401 = [
    ("no_free", """
int $F_main(int c) {
  char *p = $A; // @CWE401
  p[0] = 1;
  return 0;
}
"""),
    ("free_in_branch", """
int $F_main(int c) {
  char *p = $A; // @CWE401
  p[0] = 1;
  if (c) {
    free(p);
  }
  return 0;
}
"""),
    ("overwritten", """
int $F_main(int c) {
  char *p = $A; // @CWE401
  p = $A;
  free(p);
  return 0;
}
"""),
    ("early_return", """
int $F_main(int c) {
  char *p = $A; // @CWE401
  if (c > 3) {
    return 1;
  }
  free(p);
  return 0;
}
"""),
    ("alloc_in_loop", """
int $F_main(int c) {
  char *p = 0;
  while (c) {
    p = $A; // @CWE401
    p[0] = 1;
    c = c - 1;
  }
  free(p);
  return 0;
}
"""),
    ("helper_keeps", """
void $F_fill(char *b) {
  b[0] = 1;
}

int $F_main(int c) {
  char *p = $A; // @CWE401
  $F_fill(p);
  return 0;
}
"""),
    ("wrapper_result_dropped", """
char *$F_make(int n) {
  char *b = $A;
  return b;
}

int $F_main(int c) {
  char *p = $F_make(4); // @CWE401
  p[0] = 1;
  return 0;
}
"""),
    ("alias_unfreed", """
int $F_main(int c) {
  char *p = $A; // @CWE401
  char *q = p;
  q[0] = 1;
  return 0;
}
"""),
    ("freed_on_one_arm", """
int $F_main(int c) {
  char *p = $A; // @CWE401
  if (c) {
    free(p);
  } else {
    p[1] = 2;
  }
  return 0;
}
"""),
    ("second_buffer", """
int $F_main(int c) {
  char *a = $A;
  char *b = $A; // @CWE401
  a[0] = 1;
  b[0] = 2;
  free(a);
  return 0;
}
"""),
    ("error_path_in_worker", """
int $F_work(int n) {
  char *buf = $A; // @CWE401
  if (n < 0) {
    return 1;
  }
  buf[0] = n;
  free(buf);
  return 0;
}

int $F_main(int c) {
  return $F_work(c);
}
"""),
    ("alias_then_overwrite", """
int $F_main(int c) {
  char *p = $A; // @CWE401
  char *q = p;
  q[0] = 1;
  p = $A;
  free(p);
  return 0;
}
"""),
    ("int_buffer", """
int $F_main(int c) {
  int *v = $A; // @CWE401
  v[2] = 7;
  return v[2];
}
"""),
    ("leak_after_loop", """
int $F_main(int c) {
  int i = 0;
  int *v = $A; // @CWE401
  while (i < c) {
    v[i] = i;
    i = i + 1;
  }
  return i;
}
"""),
]

CWE401_CLEAN = [
    ("freed", """
int $F_main(int c) {
  char *p = $A;
  p[0] = 1;
  free(p);
  return 0;
}
"""),
    ("freed_on_both_arms", """
int $F_main(int c) {
  char *p = $A;
  if (c) {
    p[0] = 1;
    free(p);
  } else {
    free(p);
  }
  return 0;
}
"""),
    ("freed_through_alias", """
int $F_main(int c) {
  char *p = $A;
  char *q = p;
  free(q);
  return 0;
}
"""),
    ("freed_by_helper", """
void $F_release(char *b) {
  free(b);
}

int $F_main(int c) {
  char *p = $A;
  $F_release(p);
  return 0;
}
"""),
    ("wrapper_result_freed", """
char *$F_make(int n) {
  char *b = $A;
  return b;
}

int $F_main(int c) {
  char *p = $F_make(8);
  p[0] = 1;
  free(p);
  return 0;
}
"""),
    ("kept_in_global", """
char *$F_keep;

int $F_main(int c) {
  char *p = $A;
  $F_keep = p;
  return 0;
}
"""),
    ("handed_out", """
void $F_give(char **out) {
  char *p = $A;
  *out = p;
}

int $F_main(int c) {
  return 0;
}
"""),
    ("null_checked", """
int $F_main(int c) {
  char *p = $A;
  if (p == NULL) {
    return 1;
  }
  p[0] = 1;
  free(p);
  return 0;
}
"""),
]

CWE415 = [
    ("twice", """
int $F_main(int c) {
  char *p = $A;
  free(p); // @CWE415
  free(p);
  return 0;
}
"""),
    ("alias_declared", """
int $F_main(int c) {
  char *p = $A;
  char *q = p;
  free(p); // @CWE415
  free(q);
  return 0;
}
"""),
    ("alias_assigned", """
int $F_main(int c) {
  char *p = $A;
  char *q;
  q = p;
  free(q); // @CWE415
  free(p);
  return 0;
}
"""),
    ("second_conditional", """
int $F_main(int c) {
  char *p = $A;
  free(p); // @CWE415
  if (c) {
    free(p);
  }
  return 0;
}
"""),
    ("first_conditional", """
int $F_main(int c) {
  char *p = $A;
  if (c) {
    free(p); // @CWE415
  }
  free(p);
  return 0;
}
"""),
    ("loop_free", """
int $F_main(int c) {
  char *p = $A; // @CWE401
  while (c) {
    free(p); // @CWE415
    c = c - 1;
  }
  return 0;
}
"""),
    ("error_flag", """
int $F_main(int c) {
  int rc = 0;
  char *p = $A;
  if (c > 2) {
    free(p); // @CWE415
    rc = 1;
  }
  free(p);
  return rc;
}
"""),
    ("alias_chain", """
int $F_main(int c) {
  char *p = $A;
  char *q = p;
  char *r = q;
  free(r); // @CWE415
  free(p);
  return 0;
}
"""),
    ("inside_helper", """
void $F_done(char *b) {
  free(b); // @CWE415
  free(b);
}

int $F_main(int c) {
  char *p = $A;
  $F_done(p);
  return 0;
}
"""),
    ("then_arm_then_after", """
int $F_main(int c) {
  char *p = $A;
  if (c) {
    free(p); // @CWE415
  } else {
    p[0] = 1;
  }
  free(p);
  return 0;
}
"""),
    ("int_buffer", """
int $F_main(int c) {
  int *v = $A;
  v[0] = c;
  free(v); // @CWE415
  c = c + 1;
  free(v);
  return c;
}
"""),
    ("free_then_loop", """
int $F_main(int c) {
  char *p = $A;
  free(p); // @CWE415
  while (c) {
    c = c - 1;
    free(p); // @CWE415
  }
  return 0;
}
"""),
    ("worker_cleanup", """
int $F_work(int n) {
  char *buf = $A; // @CWE401
  if (n == 0) {
    free(buf);
  }
  buf = 0;
  free(buf);
  return 0;
}

int $F_main(int c) {
  char *p = $A;
  free(p); // @CWE415
  free(p);
  return $F_work(c);
}
"""),
]

CWE415_CLEAN = [
    ("reallocated_between", """
int $F_main(int c) {
  char *p = $A;
  free(p);
  p = $A;
  free(p);
  return 0;
}
"""),
    ("nulled_between", """
int $F_main(int c) {
  char *p = $A;
  free(p);
  p = NULL;
  free(p);
  return 0;
}
"""),
    ("distinct_buffers", """
int $F_main(int c) {
  char *p = $A;
  char *q = $A;
  free(p);
  free(q);
  return 0;
}
"""),
    ("one_per_arm", """
int $F_main(int c) {
  char *p = $A;
  if (c) {
    free(p);
  } else {
    free(p);
  }
  return 0;
}
"""),
    ("fresh_each_iteration", """
int $F_main(int c) {
  while (c) {
    char *p = $A;
    free(p);
    c = c - 1;
  }
  return 0;
}
"""),
]

CWE416 = [
    ("deref_write", """
int $F_main(int c) {
  char *p = $A;
  free(p); // @CWE416
  *p = 1;
  return 0;
}
"""),
    ("index_read", """
int $F_main(int c) {
  char *p = $A;
  p[0] = 3;
  free(p); // @CWE416
  int x = p[0];
  return x;
}
"""),
    ("conditional_use", """
int $F_main(int c) {
  int x = 0;
  char *p = $A;
  free(p); // @CWE416
  if (c) {
    x = *p;
  }
  return x;
}
"""),
    ("through_alias", """
int $F_main(int c) {
  char *p = $A;
  char *q = p;
  free(p); // @CWE416
  q[0] = 1;
  return 0;
}
"""),
    ("helper_reads", """
int $F_show(char *b) {
  return b[0];
}

int $F_main(int c) {
  char *p = $A;
  free(p); // @CWE416
  return $F_show(p);
}
"""),
    ("in_condition", """
int $F_main(int c) {
  char *p = $A;
  p[0] = 1;
  free(p); // @CWE416
  if (p[0] == 1) {
    c = 2;
  }
  return c;
}
"""),
    ("in_return", """
int $F_main(int c) {
  int *v = $A;
  v[0] = c;
  free(v); // @CWE416
  return v[0];
}
"""),
    ("loop_after_free", """
int $F_main(int c) {
  char *p = $A;
  free(p); // @CWE416
  while (c) {
    p[c] = 0;
    c = c - 1;
  }
  return 0;
}
"""),
    ("freed_on_branch", """
int $F_main(int c) {
  char *p = $A; // @CWE401
  if (c) {
    free(p); // @CWE416
  }
  p[0] = 1;
  return 0;
}
"""),
    ("inside_worker", """
int $F_work(int n) {
  int *v = $A;
  free(v); // @CWE416
  v[1] = n;
  return 0;
}

int $F_main(int c) {
  return $F_work(c);
}
"""),
    ("alias_after_free", """
int $F_main(int c) {
  char *p = $A;
  free(p); // @CWE416
  char *q = p;
  q[0] = 2;
  return 0;
}
"""),
    ("arithmetic_read", """
int $F_main(int c) {
  int *v = $A;
  v[1] = 5;
  free(v); // @CWE416
  int w = v[1] + 2;
  return w;
}
"""),
    ("else_arm_read", """
int $F_main(int c) {
  int x = 0;
  char *p = $A;
  free(p); // @CWE416
  if (c) {
    x = 1;
  } else {
    x = *p;
  }
  return x;
}
"""),
]

CWE416_CLEAN = [
    ("use_then_free", """
int $F_main(int c) {
  char *p = $A;
  *p = 1;
  free(p);
  return 0;
}
"""),
    ("reallocated_before_use", """
int $F_main(int c) {
  char *p = $A;
  free(p);
  p = $A;
  *p = 1;
  free(p);
  return 0;
}
"""),
    ("disjoint_arms", """
int $F_main(int c) {
  char *p = $A;
  if (c) {
    free(p);
  } else {
    p[0] = 1;
    free(p);
  }
  return 0;
}
"""),
    ("other_buffer_used", """
int $F_main(int c) {
  char *p = $A;
  char *q = $A;
  free(p);
  q[0] = 1;
  free(q);
  return 0;
}
"""),
    ("nulled_after_free", """
int $F_main(int c) {
  char *p = $A;
  free(p);
  p = NULL;
  return 0;
}
"""),
]

INJECTION = [
    ("direct", """
int $F_main(int c) {
  char *x = input(); // @CODE_INJECTION
  exec(x);
  return 0;
}
"""),
    ("copied", """
int $F_main(int c) {
  char *x = input(); // @CODE_INJECTION
  char *y = x;
  exec(y);
  return 0;
}
"""),
    ("system_sink", """
int $F_main(int c) {
  char *cmd = input(); // @CODE_INJECTION
  system(cmd);
  return 0;
}
"""),
    ("helper_param", """
void $F_run(char *cmd) {
  system(cmd);
}

int $F_main(int c) {
  char *x = input(); // @CODE_INJECTION
  $F_run(x);
  return 0;
}
"""),
    ("wrapper_return", """
char *$F_read(int n) {
  char *b = input(); // @CODE_INJECTION
  return b;
}

int $F_main(int c) {
  char *x = $F_read(c);
  exec(x);
  return 0;
}
"""),
    ("conditional_sink", """
int $F_main(int c) {
  char *x = input(); // @CODE_INJECTION
  if (c) {
    exec(x);
  }
  return 0;
}
"""),
    ("offset", """
int $F_main(int c) {
  char *x = input(); // @CODE_INJECTION
  char *y = x + 1;
  exec(y);
  return 0;
}
"""),
    ("in_loop", """
int $F_main(int c) {
  char *x = input(); // @CODE_INJECTION
  while (c) {
    exec(x);
    c = c - 1;
  }
  return 0;
}
"""),
    ("gets_line", """
int $F_main(int c) {
  char *buf = 0;
  char *line = gets(buf); // @CODE_INJECTION
  system(line);
  return 0;
}
"""),
    ("recv_packet", """
int $F_main(int s) {
  char *msg = recv(s); // @CODE_INJECTION
  char *cmd = msg;
  exec(cmd);
  return 0;
}
"""),
    ("partly_sanitized", """
int $F_main(int c) {
  char *x = input(); // @CODE_INJECTION
  if (c) {
    x = sanitize(x);
  }
  exec(x);
  return 0;
}
"""),
    ("two_hops_across_helpers", """
char *$F_pass(char *v) {
  return v;
}

int $F_main(int c) {
  char *x = recv(c); // @CODE_INJECTION
  char *y = $F_pass(x);
  system(y);
  return 0;
}
"""),
]

INJECTION_CLEAN = [
    ("sanitized", """
int $F_main(int c) {
  char *x = input();
  x = sanitize(x);
  exec(x);
  return 0;
}
"""),
    ("sanitized_copy", """
int $F_main(int c) {
  char *x = input();
  char *y = sanitize(x);
  exec(y);
  return 0;
}
"""),
    ("constant_command", """
int $F_main(int c) {
  char *x = input();
  x[0] = 1;
  exec("ls");
  return 0;
}
"""),
    ("sink_before_source", """
int $F_main(int c) {
  char *x = "ls";
  exec(x);
  x = input();
  return 0;
}
"""),
    ("unrelated_value", """
int $F_main(int c) {
  char *x = input();
  char *y = "date";
  system(y);
  return 0;
}
"""),
]

GROUPS = [
    ("cwe401", CWE401, CWE401_CLEAN, True),
    ("cwe415", CWE415, CWE415_CLEAN, True),
    ("cwe416", CWE416, CWE416_CLEAN, True),
    ("injection", INJECTION, INJECTION_CLEAN, False),
]

MARKER = re.compile(r"\s*// @([A-Z0-9_ @]+)$")


def render(template, prefix, alloc):
    text = template.lstrip("\n").replace("$F", prefix).replace("$A", alloc)
    lines, truth = [], []
    for number, line in enumerate(text.splitlines(), start=1):
        m = MARKER.search(line)
        if m:
            for rule in m.group(1).replace("@", " ").split():
                truth.append({"rule": rule, "line": number})
            line = line[: m.start()]
        lines.append(line)
    return "\n".join(lines) + "\n", truth


def cases():
    for group, positives, negatives, per_allocator in GROUPS:
        variants = ALLOCATORS.items() if per_allocator else [("", "")]
        for kind, templates in (("bug", positives), ("ok", negatives)):
            for name, template in templates:
                for tag, alloc in variants:
                    stem = f"{kind}_{name}" + (f"_{tag}" if tag else "")
                    prefix = f"{group}_{stem}"
                    source, truth = render(template, prefix, alloc)
                    yield f"{group}/{stem}", source, truth


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "corpus"))
    ap.add_argument("--check", action="store_true", help="fail if the files on disk differ")
    args = ap.parse_args()
    out = Path(args.out)

    files, truth = {}, {}
    for case, source, expected in cases():
        if len(source.splitlines()) > 40:
            sys.exit(f"{case}: more than 40 lines")
        files[f"{case}.c"] = source
        truth[case] = expected
    files["truth.json"] = json.dumps({"cases": truth}, indent=2, sort_keys=True) + "\n"

    stale = []
    for rel, content in sorted(files.items()):
        path = out / rel
        if args.check:
            if not path.is_file() or path.read_text() != content:
                stale.append(rel)
        else:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(content)
    if args.check:
        extra = [str(p.relative_to(out)) for p in out.rglob("*.c") if str(p.relative_to(out)) not in files]
        if stale or extra:
            sys.exit("corpus out of date: " + ", ".join(stale + extra))
    counts = {}
    for case, expected in truth.items():
        counts.setdefault(case.split("/")[0], [0, 0])[0 if expected else 1] += 1
    print(" ".join(f"{g}: {b} buggy, {o} clean" for g, (b, o) in sorted(counts.items())))


if __name__ == "__main__":
    main()
