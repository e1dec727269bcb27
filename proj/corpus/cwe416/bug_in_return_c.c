int cwe416_bug_in_return_c_main(int c) {
  int *v = calloc(4, 4);
  v[0] = c;
  free(v);
  return v[0];
}
