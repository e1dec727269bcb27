int cwe416_bug_arithmetic_read_m_main(int c) {
  int *v = malloc(16);
  v[1] = 5;
  free(v);
  int w = v[1] + 2;
  return w;
}
