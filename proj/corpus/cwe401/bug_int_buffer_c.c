int cwe401_bug_int_buffer_c_main(int c) {
  int *v = calloc(4, 4);
  v[2] = 7;
  return v[2];
}
