int cwe401_bug_leak_after_loop_c_main(int c) {
  int i = 0;
  int *v = calloc(4, 4);
  while (i < c) {
    v[i] = i;
    i = i + 1;
  }
  return i;
}
