int cwe401_bug_leak_after_loop_m_main(int c) {
  int i = 0;
  int *v = malloc(16);
  while (i < c) {
    v[i] = i;
    i = i + 1;
  }
  return i;
}
