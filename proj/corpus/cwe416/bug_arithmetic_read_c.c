int cwe416_bug_arithmetic_read_c_main(int c) {
  int *v = calloc(4, 4);
  v[1] = 5;
  free(v);
  int w = v[1] + 2;
  return w;
}
